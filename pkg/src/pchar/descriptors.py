"""Group descriptor grammar.

    cyclic:<n>
    product:<descriptor>,<descriptor>
    extraspecial:<p>,<m>
    example:<p>,<m>
    file:<path>           (path may not contain a comma)

``example:p,m`` names the semidirect-product construction; its group is
built on demand, while the orbit-method verifier never needs it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .groups import (
    FiniteGroup,
    cyclic_group,
    direct_product,
    function_power_semidirect,
    heisenberg_extraspecial,
)
from .groupfile import load_group_file

__all__ = ["Descriptor", "parse_descriptor", "build_group"]


@dataclass(frozen=True)
class Descriptor:
    kind: str
    ints: tuple[int, ...] = ()
    path: str = ""
    parts: tuple["Descriptor", ...] = ()

    def canonical(self) -> str:
        if self.kind == "cyclic":
            return f"cyclic:{self.ints[0]}"
        if self.kind in ("extraspecial", "example"):
            return f"{self.kind}:{self.ints[0]},{self.ints[1]}"
        if self.kind == "file":
            return f"file:{self.path}"
        if self.kind == "product":
            return f"product:{self.parts[0].canonical()},{self.parts[1].canonical()}"
        raise AssertionError(self.kind)


def parse_descriptor(text: str) -> Descriptor:
    desc, pos = _parse(text.strip(), 0)
    if pos != len(text.strip()):
        raise ValueError(f"trailing characters in descriptor {text!r} at position {pos}")
    return desc


def _parse(s: str, pos: int) -> tuple[Descriptor, int]:
    colon = s.find(":", pos)
    if colon < 0:
        raise ValueError(f"descriptor missing ':' near {s[pos:]!r}")
    kind = s[pos:colon]
    pos = colon + 1
    if kind == "cyclic":
        n, pos = _parse_int(s, pos)
        return Descriptor("cyclic", ints=(n,)), pos
    if kind in ("extraspecial", "example"):
        a, pos = _parse_int(s, pos)
        pos = _expect(s, pos, ",")
        b, pos = _parse_int(s, pos)
        return Descriptor(kind, ints=(a, b)), pos
    if kind == "file":
        end = s.find(",", pos)
        end = len(s) if end < 0 else end
        path = s[pos:end]
        if not path:
            raise ValueError("empty file path in descriptor")
        return Descriptor("file", path=path), end
    if kind == "product":
        left, pos = _parse(s, pos)
        pos = _expect(s, pos, ",")
        right, pos = _parse(s, pos)
        return Descriptor("product", parts=(left, right)), pos
    raise ValueError(f"unknown descriptor kind {kind!r}")


def _parse_int(s: str, pos: int) -> tuple[int, int]:
    end = pos
    while end < len(s) and s[end].isdigit():
        end += 1
    if end == pos:
        raise ValueError(f"expected integer at position {pos} in {s!r}")
    return int(s[pos:end]), end


def _expect(s: str, pos: int, ch: str) -> int:
    if pos >= len(s) or s[pos] != ch:
        raise ValueError(f"expected {ch!r} at position {pos} in {s!r}")
    return pos + 1


def build_group(desc: Descriptor, cap: int, base_dir: Path | None = None) -> FiniteGroup:
    """Materialize the group; file paths resolve against base_dir.  The
    element-count cap applies uniformly to every descriptor kind."""
    from .errors import ResourceLimitError

    if desc.kind == "cyclic":
        if desc.ints[0] > cap:
            raise ResourceLimitError(f"cyclic order {desc.ints[0]} exceeds element cap {cap}")
        g = cyclic_group(desc.ints[0])
    elif desc.kind == "extraspecial":
        g = heisenberg_extraspecial(desc.ints[0], desc.ints[1], cap=cap)
    elif desc.kind == "example":
        p, m = desc.ints
        g = function_power_semidirect(heisenberg_extraspecial(p, m, cap=cap), p, cap=cap)
    elif desc.kind == "file":
        path = Path(desc.path)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        g = load_group_file(path, cap=cap)
    elif desc.kind == "product":
        g1 = build_group(desc.parts[0], cap, base_dir)
        g2 = build_group(desc.parts[1], cap, base_dir)
        g = direct_product(g1, g2, cap=cap)
    else:  # pragma: no cover
        raise AssertionError(desc.kind)
    g.name = desc.canonical()
    return g
