"""Finite groups on element indices 0..n-1 with exact, vectorizable arithmetic.

Every group exposes a scalar product mul(a, b) and a numpy-vectorized
mul_vec(a, b); structured constructions (cyclic, direct product, Heisenberg,
function-power semidirect) implement mul_vec in closed form so that
conjugacy classes and class-matrix computations stay fast at tens of
thousands of elements.  Element indexing of structured products is
mixed-radix with the leftmost factor most significant, so fixtures are
stable across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ResourceLimitError

__all__ = [
    "DEFAULT_ELEMENT_CAP",
    "FiniteGroup",
    "CyclicGroup",
    "DirectProductGroup",
    "HeisenbergGroup",
    "FunctionPowerGroup",
    "TableGroup",
    "PermutationGroup",
    "SubgroupView",
    "Subgroup",
    "PermGenerators",
    "ConjugacyData",
    "cyclic_group",
    "direct_product",
    "heisenberg_extraspecial",
    "function_power_semidirect",
    "group_from_perm_generators",
    "group_from_table",
    "conjugacy_classes",
    "center",
    "subgroup",
    "subgroup_closure",
    "normal_closure",
    "is_normal",
    "normal_subgroups_between",
    "all_normal_subgroups",
    "derived_subgroup",
    "group_prime",
    "prime_power",
    "is_nilpotent",
    "check_group_axioms",
]

DEFAULT_ELEMENT_CAP = 200_000
_TABLE_BUILD_CAP = 2048


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, a) with n = p**a, or None if n is not a prime power (n=1 -> None)."""
    if n < 2:
        return None
    p = n
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            p = d
            break
    a = 0
    m = n
    while m % p == 0:
        m //= p
        a += 1
    return (p, a) if m == 1 else None


class FiniteGroup:
    """Base class: elements are 0..order-1, identity is `identity`."""

    order: int
    identity: int = 0
    name: str = "group"

    def __init__(self):
        self._cache: dict = {}

    # -- required scalar operations --

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    # -- vectorized operations (overridden by structured backings) --

    def mul_vec(self, a, b) -> np.ndarray:
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        flat = np.fromiter(
            (self.mul(int(x), int(y)) for x, y in zip(a_arr.ravel(), b_arr.ravel())),
            dtype=np.int64,
            count=a_arr.size,
        )
        return flat.reshape(a_arr.shape)

    def inv_vec(self, a) -> np.ndarray:
        a_arr = np.asarray(a, dtype=np.int64)
        flat = np.fromiter((self.inv(int(x)) for x in a_arr.ravel()), dtype=np.int64, count=a_arr.size)
        return flat.reshape(a_arr.shape)

    # -- generic derived data, cached per group --

    def generating_set(self) -> list[int]:
        gens = self._cache.get("gens")
        if gens is None:
            gens = _greedy_generators(self)
            self._cache["gens"] = gens
        return list(gens)

    def inverse_table(self) -> np.ndarray:
        tbl = self._cache.get("inv_table")
        if tbl is None:
            tbl = self.inv_vec(np.arange(self.order, dtype=np.int64))
            tbl.flags.writeable = False
            self._cache["inv_table"] = tbl
        return tbl

    def element_orders(self) -> np.ndarray:
        orders = self._cache.get("orders")
        if orders is None:
            orders = _element_orders(self)
            orders.flags.writeable = False
            self._cache["orders"] = orders
        return orders

    def exponent(self) -> int:
        exp = self._cache.get("exponent")
        if exp is None:
            exp = 1
            for o in np.unique(self.element_orders()):
                exp = math.lcm(exp, int(o))
            self._cache["exponent"] = exp
        return exp

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return str(a)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} of order {self.order}>"


def _element_orders(g: FiniteGroup) -> np.ndarray:
    n = g.order
    base = np.arange(n, dtype=np.int64)
    cur = base.copy()
    orders = np.zeros(n, dtype=np.int64)
    orders[cur == g.identity] = 1
    step = 1
    while (orders == 0).any():
        step += 1
        if step > n:
            raise AssertionError("element order exceeded group order; broken multiplication")
        live = orders == 0
        cur[live] = g.mul_vec(cur[live], base[live])
        hit = live & (cur == g.identity)
        orders[hit] = step
    return orders


def _greedy_generators(g: FiniteGroup) -> list[int]:
    n = g.order
    covered = np.zeros(n, dtype=bool)
    covered[g.identity] = True
    gens: list[int] = []
    for x in range(n):
        if not covered[x]:
            gens.append(x)
            covered = _closure_mask(g, gens)
    return gens


def _closure_mask(g: FiniteGroup, seeds: Sequence[int]) -> np.ndarray:
    mask = np.zeros(g.order, dtype=bool)
    mask[g.identity] = True
    frontier = np.array([g.identity], dtype=np.int64)
    seed_arr = [int(s) for s in seeds]
    while frontier.size:
        new_parts = []
        for s in seed_arr:
            prod = g.mul_vec(frontier, s)
            fresh = prod[~mask[prod]]
            if fresh.size:
                fresh = np.unique(fresh)
                mask[fresh] = True
                new_parts.append(fresh)
        frontier = np.concatenate(new_parts) if new_parts else np.empty(0, dtype=np.int64)
    return mask


# ---------------------------------------------------------------------------
# structured backings
# ---------------------------------------------------------------------------


class CyclicGroup(FiniteGroup):
    """Additive group of integers modulo n."""

    def __init__(self, n: int):
        super().__init__()
        self.order = n
        self.name = f"cyclic:{n}"

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def inv(self, a: int) -> int:
        return (-a) % self.order

    def mul_vec(self, a, b) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.order

    def inv_vec(self, a) -> np.ndarray:
        return (-np.asarray(a, dtype=np.int64)) % self.order

    def generating_set(self) -> list[int]:
        return [1] if self.order > 1 else []


class DirectProductGroup(FiniteGroup):
    """Componentwise product; index = i1 * |g2| + i2 (left factor most significant)."""

    def __init__(self, g1: FiniteGroup, g2: FiniteGroup):
        super().__init__()
        self.g1, self.g2 = g1, g2
        self.order = g1.order * g2.order
        self.name = f"product:{g1.name},{g2.name}"

    def mul(self, a: int, b: int) -> int:
        n2 = self.g2.order
        a1, a2 = divmod(a, n2)
        b1, b2 = divmod(b, n2)
        return self.g1.mul(a1, b1) * n2 + self.g2.mul(a2, b2)

    def inv(self, a: int) -> int:
        n2 = self.g2.order
        a1, a2 = divmod(a, n2)
        return self.g1.inv(a1) * n2 + self.g2.inv(a2)

    def mul_vec(self, a, b) -> np.ndarray:
        n2 = self.g2.order
        a1, a2 = np.divmod(np.asarray(a, dtype=np.int64), n2)
        b1, b2 = np.divmod(np.asarray(b, dtype=np.int64), n2)
        return self.g1.mul_vec(a1, b1) * n2 + self.g2.mul_vec(a2, b2)

    def inv_vec(self, a) -> np.ndarray:
        n2 = self.g2.order
        a1, a2 = np.divmod(np.asarray(a, dtype=np.int64), n2)
        return self.g1.inv_vec(a1) * n2 + self.g2.inv_vec(a2)

    def generating_set(self) -> list[int]:
        n2 = self.g2.order
        gens = [x * n2 for x in self.g1.generating_set()]
        gens += list(self.g2.generating_set())
        return gens

    def label(self, a: int) -> str:
        a1, a2 = divmod(a, self.g2.order)
        return f"({self.g1.label(a1)},{self.g2.label(a2)})"


class HeisenbergGroup(FiniteGroup):
    """Exponent-p extraspecial group of order p^(2m-1), m >= 2, on tuples
    (a, b, c) in F_p^(m-1) x F_p^(m-1) x F_p with
    (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b')."""

    def __init__(self, p: int, m: int):
        super().__init__()
        self.p, self.m = p, m
        self.width = m - 1
        self.ndigits = 2 * self.width + 1
        self.order = p ** self.ndigits
        self.name = f"extraspecial:{p},{m}"
        w = [p ** (self.ndigits - 1 - j) for j in range(self.ndigits)]
        self._weights = np.array(w, dtype=np.int64)

    def _decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        digits = np.empty(idx.shape + (self.ndigits,), dtype=np.int64)
        rest = idx
        for j in range(self.ndigits):
            d, rest = np.divmod(rest, self._weights[j])
            digits[..., j] = d
        return digits

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return (digits * self._weights).sum(axis=-1)

    def mul_vec(self, a, b) -> np.ndarray:
        p, w = self.p, self.width
        da, db = self._decode(a), self._decode(b)
        da, db = np.broadcast_arrays(da, db)
        out = (da + db) % p
        dot = (da[..., :w] * db[..., w : 2 * w]).sum(axis=-1)
        out[..., -1] = (da[..., -1] + db[..., -1] + dot) % p
        return self._encode(out)

    def inv_vec(self, a) -> np.ndarray:
        p, w = self.p, self.width
        d = self._decode(a)
        out = (-d) % p
        dot = (d[..., :w] * d[..., w : 2 * w]).sum(axis=-1)
        out[..., -1] = (-d[..., -1] + dot) % p
        return self._encode(out)

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_vec(np.int64(a), np.int64(b)))

    def inv(self, a: int) -> int:
        return int(self.inv_vec(np.int64(a)))

    def generating_set(self) -> list[int]:
        gens = []
        for j in range(2 * self.width):
            digits = np.zeros(self.ndigits, dtype=np.int64)
            digits[j] = 1
            gens.append(int(self._encode(digits)))
        return gens


class FunctionPowerGroup(FiniteGroup):
    """Semidirect product C_p x| E^p where C_p cyclically translates the
    p coordinate functions: element (c, f), product
    (c1,f1)(c2,f2) = (c1+c2, x -> f1(c2+x) * f2(x))."""

    def __init__(self, e: FiniteGroup, p: int):
        super().__init__()
        self.e, self.p = e, p
        self.a_size = e.order**p
        self.order = p * self.a_size
        self.name = f"fnpower:{e.name},{p}"
        self._weights = np.array([e.order ** (p - 1 - x) for x in range(p)], dtype=np.int64)

    def _decode(self, idx) -> tuple[np.ndarray, np.ndarray]:
        idx = np.asarray(idx, dtype=np.int64)
        c, rest = np.divmod(idx, self.a_size)
        digits = np.empty(idx.shape + (self.p,), dtype=np.int64)
        for x in range(self.p):
            d, rest = np.divmod(rest, self._weights[x])
            digits[..., x] = d
        return c, digits

    def _encode(self, c: np.ndarray, digits: np.ndarray) -> np.ndarray:
        return c * self.a_size + (digits * self._weights).sum(axis=-1)

    def mul_vec(self, a, b) -> np.ndarray:
        p = self.p
        c1, f1 = self._decode(a)
        c2, f2 = self._decode(b)
        c1, c2 = np.broadcast_arrays(c1, c2)
        f1, f2 = np.broadcast_arrays(f1, f2)
        pos = (np.arange(p, dtype=np.int64) + c2[..., None]) % p
        f1s = np.take_along_axis(f1, pos, axis=-1)
        fout = self.e.mul_vec(f1s.ravel(), f2.ravel()).reshape(f1s.shape)
        return self._encode((c1 + c2) % p, fout)

    def inv_vec(self, a) -> np.ndarray:
        p = self.p
        c, f = self._decode(a)
        pos = (np.arange(p, dtype=np.int64) - c[..., None]) % p
        fs = np.take_along_axis(f, pos, axis=-1)
        finv = self.e.inv_vec(fs.ravel()).reshape(fs.shape)
        return self._encode((-c) % p, finv)

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_vec(np.int64(a), np.int64(b)))

    def inv(self, a: int) -> int:
        return int(self.inv_vec(np.int64(a)))

    def base_subgroup_members(self) -> np.ndarray:
        """Indices of the normal subgroup E^p (the c = 0 slice)."""
        return np.arange(self.a_size, dtype=np.int64)

    def coordinate_embed(self, x: int, coordinate: int) -> int:
        """Index of the function supported at one coordinate with value x."""
        return int(x) * int(self._weights[coordinate])

    def generating_set(self) -> list[int]:
        gens = [self.a_size]  # the translation generator c = 1
        gens += [self.coordinate_embed(x, 0) for x in self.e.generating_set()]
        return gens


class TableGroup(FiniteGroup):
    """Group given by an explicit n x n multiplication table."""

    def __init__(self, table: np.ndarray, name: str = "table"):
        super().__init__()
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("table entries out of range")
        self.order = n
        self.name = name
        self._table = table
        ident = None
        for e in range(n):
            if np.array_equal(table[e], np.arange(n)) and np.array_equal(table[:, e], np.arange(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no two-sided identity")
        self.identity = ident
        inv = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(table == ident)
        inv[rows] = cols
        if (inv < 0).any():
            raise ValueError("some element has no inverse")
        self._inv = inv
        self._table.flags.writeable = False
        self._inv.flags.writeable = False

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def mul_vec(self, a, b) -> np.ndarray:
        return self._table[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def inv_vec(self, a) -> np.ndarray:
        return self._inv[np.asarray(a, dtype=np.int64)]


class PermutationGroup(FiniteGroup):
    """Group generated by permutations, enumerated by breadth-first closure
    from the identity with generators applied in the given order."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], name: str = "perm", cap: int = DEFAULT_ELEMENT_CAP):
        super().__init__()
        self.degree = degree
        gen_arrays = [np.asarray(p, dtype=np.int64) for p in generators]
        ident = tuple(range(degree))
        elems: list[tuple[int, ...]] = [ident]
        index: dict[tuple[int, ...], int] = {ident: 0}
        queue = 0
        while queue < len(elems):
            w = np.asarray(elems[queue], dtype=np.int64)
            queue += 1
            for gp in gen_arrays:
                nxt = tuple(int(v) for v in gp[w])  # right action: w then generator
                if nxt not in index:
                    if len(elems) >= cap:
                        raise ResourceLimitError(
                            f"permutation closure exceeded element cap {cap}"
                        )
                    index[nxt] = len(elems)
                    elems.append(nxt)
        self.order = len(elems)
        self.name = name
        self._elems = elems
        self._index = index
        self._gen_indices = [index[tuple(int(v) for v in gp)] for gp in gen_arrays]
        self._table: np.ndarray | None = None
        if self.order <= _TABLE_BUILD_CAP:
            perms = np.array(elems, dtype=np.int64)
            table = np.empty((self.order, self.order), dtype=np.int64)
            for b in range(self.order):
                composed = perms[b][perms]  # rows: a -> perm_b[perm_a]
                keys = [tuple(int(v) for v in row) for row in composed]
                table[:, b] = [index[k] for k in keys]
            table.flags.writeable = False
            self._table = table
            inv = np.full(self.order, -1, dtype=np.int64)
            rows, cols = np.nonzero(table == 0)
            inv[rows] = cols
            self._inv = inv

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        pa = np.asarray(self._elems[a], dtype=np.int64)
        pb = np.asarray(self._elems[b], dtype=np.int64)
        return self._index[tuple(int(v) for v in pb[pa])]

    def inv(self, a: int) -> int:
        if self._table is not None:
            return int(self._inv[a])
        pa = self._elems[a]
        out = [0] * self.degree
        for i, v in enumerate(pa):
            out[v] = i
        return self._index[tuple(out)]

    def mul_vec(self, a, b) -> np.ndarray:
        if self._table is not None:
            return self._table[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]
        return super().mul_vec(a, b)

    def inv_vec(self, a) -> np.ndarray:
        if self._table is not None:
            return self._inv[np.asarray(a, dtype=np.int64)]
        return super().inv_vec(a)

    def generating_set(self) -> list[int]:
        return [x for x in self._gen_indices if x != self.identity]

    def label(self, a: int) -> str:
        return str(self._elems[a])


class SubgroupView(FiniteGroup):
    """A subgroup re-indexed as a standalone group 0..|H|-1."""

    def __init__(self, parent: FiniteGroup, members: np.ndarray, name: str | None = None):
        super().__init__()
        members = np.sort(np.asarray(members, dtype=np.int64))
        self.parent = parent
        self.members = members
        self.members.flags.writeable = False
        self.order = len(members)
        self.name = name or f"{parent.name}|sub{self.order}"
        idx = np.full(parent.order, -1, dtype=np.int64)
        idx[members] = np.arange(self.order, dtype=np.int64)
        self._parent_to_sub = idx
        self.identity = int(idx[parent.identity])
        if self.identity < 0:
            raise ValueError("subgroup members must contain the identity")

    def to_parent(self, a) -> np.ndarray:
        return self.members[np.asarray(a, dtype=np.int64)]

    def from_parent(self, a) -> np.ndarray:
        out = self._parent_to_sub[np.asarray(a, dtype=np.int64)]
        if (np.asarray(out) < 0).any():
            raise ValueError("element does not belong to the subgroup")
        return out

    def mul(self, a: int, b: int) -> int:
        return int(self._parent_to_sub[self.parent.mul(int(self.members[a]), int(self.members[b]))])

    def inv(self, a: int) -> int:
        return int(self._parent_to_sub[self.parent.inv(int(self.members[a]))])

    def mul_vec(self, a, b) -> np.ndarray:
        p = self.parent.mul_vec(self.members[np.asarray(a, dtype=np.int64)], self.members[np.asarray(b, dtype=np.int64)])
        return self._parent_to_sub[p]

    def inv_vec(self, a) -> np.ndarray:
        return self._parent_to_sub[self.parent.inv_vec(self.members[np.asarray(a, dtype=np.int64)])]


# ---------------------------------------------------------------------------
# subgroups and conjugacy data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermGenerators:
    """Permutation generators as image arrays of length `degree`."""

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for gp in self.generators:
            if sorted(gp) != list(range(self.degree)):
                raise ValueError(f"generator {gp} is not a bijection on 0..{self.degree - 1}")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a sorted member set of a parent group."""

    parent: FiniteGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def member_mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def contains(self, x: int) -> bool:
        i = np.searchsorted(np.asarray(self.members), x)
        return i < len(self.members) and self.members[i] == x

    def as_group(self, name: str | None = None) -> SubgroupView:
        return SubgroupView(self.parent, np.asarray(self.members, dtype=np.int64), name)

    def is_whole_group(self) -> bool:
        return self.order == self.parent.order


def subgroup(parent: FiniteGroup, members: Iterable[int], validate: bool = True) -> Subgroup:
    mem = tuple(sorted(int(x) for x in set(members)))
    if validate:
        if not mem or parent.identity not in mem:
            raise ValueError("subgroup must contain the identity")
        if parent.order % len(mem) != 0:
            raise ValueError("subgroup size does not divide group order")
        arr = np.asarray(mem, dtype=np.int64)
        mask = np.zeros(parent.order, dtype=bool)
        mask[arr] = True
        gens = _members_greedy_generators(parent, arr)
        closure = _closure_mask(parent, gens)
        if not np.array_equal(closure, mask):
            raise ValueError("member set is not closed under multiplication")
        if not mask[parent.inv_vec(arr)].all():
            raise ValueError("member set is not closed under inversion")
    return Subgroup(parent, mem)


def _members_greedy_generators(parent: FiniteGroup, members: np.ndarray) -> list[int]:
    covered = np.zeros(parent.order, dtype=bool)
    covered[parent.identity] = True
    gens: list[int] = []
    for x in members:
        if not covered[x]:
            gens.append(int(x))
            covered = _closure_mask(parent, gens)
    return gens


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes: class 0 is the identity class; the rest are sorted
    by (size, smallest member)."""

    class_of: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray
    inverse_class: np.ndarray
    num_classes: int
    member_lists: tuple[np.ndarray, ...] = field(repr=False, default=())
    rep_orders: np.ndarray = field(repr=False, default=None)

    def members(self, c: int) -> np.ndarray:
        return self.member_lists[c]


def conjugacy_classes(g: FiniteGroup) -> ConjugacyData:
    cached = g._cache.get("conjugacy")
    if cached is not None:
        return cached
    n = g.order
    gens = g.generating_set()
    arange = np.arange(n, dtype=np.int64)
    # conjugation maps x -> s^-1 x s per generator; classes are the connected
    # components, found by min-label propagation with pointer jumping
    maps = [g.mul_vec(g.mul_vec(g.inv(s), arange), s) for s in gens]
    labels = arange.copy()
    while True:
        new = labels
        for cmap in maps:
            new = np.minimum(new, new[cmap])
        new = new[new]
        new = new[new]
        if np.array_equal(new, labels):
            break
        labels = new
    uniq, class_of_raw = np.unique(labels, return_inverse=True)
    boundaries = np.searchsorted(np.sort(class_of_raw), np.arange(len(uniq) + 1))
    order_members = np.argsort(class_of_raw, kind="stable")
    classes = [np.sort(order_members[boundaries[c] : boundaries[c + 1]]) for c in range(len(uniq))]
    # identity class first, then by (size, smallest member)
    order_keys = sorted(
        range(len(classes)),
        key=lambda c: (int(classes[c][0]) != g.identity or len(classes[c]) != 1, len(classes[c]), int(classes[c][0])),
    )
    relabel = np.empty(len(classes), dtype=np.int64)
    for new_id, old in enumerate(order_keys):
        relabel[old] = new_id
    class_of = relabel[class_of_raw]
    member_lists = tuple(classes[old] for old in order_keys)
    reps = np.array([int(m[0]) for m in member_lists], dtype=np.int64)
    sizes = np.array([len(m) for m in member_lists], dtype=np.int64)
    inv_tbl = g.inverse_table()
    inverse_class = class_of[inv_tbl[reps]]
    orders = g.element_orders()
    data = ConjugacyData(
        class_of=class_of,
        reps=reps,
        sizes=sizes,
        inverse_class=inverse_class,
        num_classes=len(member_lists),
        member_lists=member_lists,
        rep_orders=orders[reps],
    )
    class_of.flags.writeable = False
    reps.flags.writeable = False
    sizes.flags.writeable = False
    inverse_class.flags.writeable = False
    g._cache["conjugacy"] = data
    return data


def center(g: FiniteGroup) -> Subgroup:
    cached = g._cache.get("center")
    if cached is not None:
        return cached
    n = g.order
    mask = np.ones(n, dtype=bool)
    arange = np.arange(n, dtype=np.int64)
    for x in g.generating_set():
        mask &= g.mul_vec(arange, x) == g.mul_vec(x, arange)
    result = subgroup(g, np.nonzero(mask)[0], validate=False)
    g._cache["center"] = result
    return result


# ---------------------------------------------------------------------------
# closures and normal-subgroup enumeration
# ---------------------------------------------------------------------------


def subgroup_closure(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    mask = _closure_mask(g, [int(s) for s in seeds])
    return subgroup(g, np.nonzero(mask)[0], validate=False)


def normal_closure(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    gens = g.generating_set()
    ginv = [g.inv(x) for x in gens]
    seed_list = sorted(set(int(s) for s in seeds) | {g.identity})
    while True:
        mask = _closure_mask(g, seed_list)
        members = np.nonzero(mask)[0]
        grown = False
        for x, xi in zip(gens, ginv):
            conj = g.mul_vec(g.mul_vec(xi, members), x)
            fresh = conj[~mask[conj]]
            if fresh.size:
                seed_list.extend(int(v) for v in np.unique(fresh))
                grown = True
        if not grown:
            return subgroup(g, members, validate=False)


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    mask = h.member_mask()
    members = np.asarray(h.members, dtype=np.int64)
    for x in g.generating_set():
        conj = g.mul_vec(g.mul_vec(g.inv(x), members), x)
        if not mask[conj].all():
            return False
    return True


def normal_subgroups_between(g: FiniteGroup, lower: Subgroup, p: int | None = None) -> list[Subgroup]:
    """All normal subgroups Y of g with lower < Y and |Y : lower| = p.

    Found by closing lower united with one coset candidate at a time under
    multiplication and conjugation, then deduplicating.
    """
    if lower.parent is not g:
        raise ValueError("lower must be a subgroup of g")
    if not is_normal(g, lower):
        raise ValueError("lower subgroup must be normal in g")
    if p is None:
        pp = prime_power(g.order)
        if pp is None:
            raise ValueError("p must be given explicitly for non-prime-power groups")
        p = pp[0]
    target = lower.order * p
    found: dict[tuple[int, ...], Subgroup] = {}
    lower_mask = lower.member_mask()
    in_found = np.zeros(g.order, dtype=bool)
    for x in range(g.order):
        if lower_mask[x] or in_found[x]:
            continue
        y = normal_closure(g, list(lower.members) + [x])
        if y.order == target:
            key = y.members
            if key not in found:
                found[key] = y
                in_found[np.asarray(y.members)] = True
    return [found[k] for k in sorted(found)]


def all_normal_subgroups(g: FiniteGroup, cap: int = 4096) -> list[Subgroup]:
    """Every normal subgroup, as joins of normal closures of single elements.
    Intended for desk-scale groups; raises beyond `cap` subgroups."""
    cached = g._cache.get("all_normals")
    if cached is not None:
        return list(cached)
    atoms: dict[tuple[int, ...], Subgroup] = {}
    trivial = subgroup(g, [g.identity], validate=False)
    atoms[trivial.members] = trivial
    for x in range(g.order):
        if x == g.identity:
            continue
        nc = normal_closure(g, [x])
        atoms.setdefault(nc.members, nc)
    result = dict(atoms)
    frontier = list(atoms.values())
    while frontier:
        new: list[Subgroup] = []
        for a in frontier:
            for b in list(atoms.values()):
                join_seed = set(a.members) | set(b.members)
                if tuple(sorted(join_seed)) in result:
                    continue
                j = normal_closure(g, join_seed)
                if j.members not in result:
                    result[j.members] = j
                    new.append(j)
                    if len(result) > cap:
                        raise ResourceLimitError(f"normal subgroup count exceeded cap {cap}")
        frontier = new
    out = [result[k] for k in sorted(result, key=lambda m: (len(m), m))]
    g._cache["all_normals"] = tuple(out)
    return out


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    gens = g.generating_set()
    comms = []
    for a in gens:
        for b in gens:
            comms.append(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)))
    return normal_closure(g, comms)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> CyclicGroup:
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    return CyclicGroup(n)


def direct_product(g1: FiniteGroup, g2: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> DirectProductGroup:
    if g1.order * g2.order > cap:
        raise ResourceLimitError(
            f"direct product order {g1.order * g2.order} exceeds element cap {cap}"
        )
    return DirectProductGroup(g1, g2)


def heisenberg_extraspecial(p: int, m: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Extraspecial group of exponent p and order p^(2m-1) for m >= 2
    (Heisenberg model); the cyclic group of order p for m = 1."""
    if not _is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m == 1:
        return cyclic_group(p)
    if p ** (2 * m - 1) > cap:
        raise ResourceLimitError(f"order p^(2m-1) = {p ** (2 * m - 1)} exceeds element cap {cap}")
    return HeisenbergGroup(p, m)


def function_power_semidirect(e: FiniteGroup, p: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """C_p acting by cyclic coordinate translation on E^p."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    order = p * e.order**p
    if order > cap:
        raise ResourceLimitError(f"semidirect product order {order} exceeds element cap {cap}")
    if e.order == 1:
        return cyclic_group(p)
    return FunctionPowerGroup(e, p)


def group_from_perm_generators(
    degree: int | PermGenerators,
    generators: Sequence[Sequence[int]] | None = None,
    name: str = "perm",
    cap: int = DEFAULT_ELEMENT_CAP,
) -> FiniteGroup:
    """Closure of permutation generators; accepts a PermGenerators record or
    (degree, generator list)."""
    if isinstance(degree, PermGenerators):
        pg = degree
    else:
        pg = PermGenerators(degree, tuple(tuple(int(v) for v in g) for g in generators or ()))
    return PermutationGroup(pg.degree, pg.generators, name=name, cap=cap)


def group_from_table(table: Sequence[Sequence[int]], name: str = "table") -> TableGroup:
    return TableGroup(np.asarray(table, dtype=np.int64), name=name)


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------


def group_prime(g: FiniteGroup) -> int | None:
    """The unique prime divisor of |G| when |G| is a nontrivial prime power."""
    pp = prime_power(g.order)
    return pp[0] if pp else None


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_nilpotent(g: FiniteGroup) -> bool:
    """Desk-scale nilpotency test: every set of p-power-order elements must be
    a normal subgroup of the right size (i.e. all Sylow subgroups normal)."""
    n = g.order
    if n == 1 or prime_power(n):
        return True
    orders = g.element_orders()
    for p in _prime_factors(n):
        pe = 1
        while n % (pe * p) == 0:
            pe *= p
        rem = orders.copy()
        while True:
            div = rem % p == 0
            if not div.any():
                break
            rem[div] //= p
        mask = rem == 1  # p-power order elements
        members = np.nonzero(mask)[0]
        if len(members) != pe:
            return False
        prods = g.mul_vec(members[:, None], members[None, :])
        if not mask[prods].all():
            return False
        sub = subgroup(g, members, validate=False)
        if not is_normal(g, sub):
            return False
    return True


def sylow_subgroup(g: FiniteGroup, p: int) -> Subgroup:
    """The set of p-power-order elements; a subgroup exactly when g is nilpotent."""
    orders = g.element_orders()
    rem = orders.copy()
    while True:
        div = rem % p == 0
        if not div.any():
            break
        rem[div] //= p
    members = np.nonzero(rem == 1)[0]
    return subgroup(g, members, validate=True)


def check_group_axioms(g: FiniteGroup, seed: int = 0, sample_triples: int = 100_000) -> None:
    """Assert associativity, identity and inverse laws: exhaustively for
    order <= 512, by seeded sampling of at least `sample_triples` above."""
    n = g.order
    arange = np.arange(n, dtype=np.int64)
    ident = g.identity
    if not np.array_equal(g.mul_vec(ident, arange), arange):
        raise AssertionError("identity is not a left identity")
    if not np.array_equal(g.mul_vec(arange, ident), arange):
        raise AssertionError("identity is not a right identity")
    inv = g.inverse_table()
    if not (g.mul_vec(inv, arange) == ident).all():
        raise AssertionError("inverse law fails")
    if n <= 512:
        for a in range(n):
            ab = g.mul_vec(a, arange)
            left = g.mul_vec(ab[:, None], arange[None, :])
            bc = g.mul_vec(arange[:, None], arange[None, :])
            right = g.mul_vec(a, bc)
            if not np.array_equal(left, right):
                raise AssertionError(f"associativity fails with first factor {a}")
    else:
        rng = np.random.default_rng(seed)
        m = sample_triples
        a = rng.integers(0, n, m)
        b = rng.integers(0, n, m)
        c = rng.integers(0, n, m)
        if not np.array_equal(g.mul_vec(g.mul_vec(a, b), c), g.mul_vec(a, g.mul_vec(b, c))):
            raise AssertionError("associativity fails on sampled triples")
