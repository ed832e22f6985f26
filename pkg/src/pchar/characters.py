"""Characters, exact character tables, and character arithmetic.

A Character stores one nonnegative integer multiplicity vector per conjugacy
class: the value on a class is sum_t mult[t] * zeta_e^t.  Products are
convolutions, conjugation reverses exponents, and inner products are integer
folds divided by |G|, so every operation here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .cyclotomic import Cyclotomic
from .cycvec import (
    conj_vec,
    crt_combine,
    embed_mult,
    eval_mod,
    fold_product,
    nonneg_lift,
    primes_one_mod,
    reduce_canonical,
    root_of_order,
)
from .dixon import compute_table_data
from .errors import NotACharacterError, TableConsistencyError
from .groups import (
    ConjugacyData,
    FiniteGroup,
    Subgroup,
    SubgroupView,
    conjugacy_classes,
    subgroup,
)

__all__ = [
    "Character",
    "CharacterTable",
    "Decomposition",
    "character_table",
    "product",
    "conjugate",
    "inner_product",
    "decompose",
    "eta",
    "kernel",
    "is_faithful",
    "char_center",
    "vanishes_outside",
    "restrict",
    "induce",
    "subgroup_view",
]


class Character:
    """An exact character-shaped class function on a finite group."""

    __slots__ = ("group", "conj", "conductor", "mult", "degree", "_reduced")

    def __init__(self, group: FiniteGroup, conj: ConjugacyData, conductor: int, mult: np.ndarray):
        mult = np.ascontiguousarray(np.asarray(mult, dtype=np.int64))
        if mult.shape != (conj.num_classes, conductor):
            raise ValueError("multiplicity matrix shape does not match classes x conductor")
        if (mult < 0).any():
            raise ValueError("multiplicity vectors must be nonnegative")
        self.group = group
        self.conj = conj
        self.conductor = conductor
        self.mult = mult
        self.mult.flags.writeable = False
        self._reduced = None
        red0 = reduce_canonical(mult[0], conductor)
        if (red0[1:] != 0).any() or red0[0] <= 0:
            raise ValueError("value at the identity class must be a positive integer")
        self.degree = int(red0[0])

    def reduced(self) -> np.ndarray:
        """Canonical integer coefficient matrix (classes x conductor)."""
        if self._reduced is None:
            red = reduce_canonical(self.mult, self.conductor)
            red.flags.writeable = False
            self._reduced = red
        return self._reduced

    def value(self, class_index: int) -> Cyclotomic:
        return Cyclotomic(self.conductor, [int(x) for x in self.mult[class_index]])

    def with_conductor(self, m: int) -> "Character":
        if m == self.conductor:
            return self
        if m % self.conductor != 0:
            raise ValueError("new conductor must be a multiple of the old one")
        step = m // self.conductor
        out = np.zeros((self.conj.num_classes, m), dtype=np.int64)
        out[:, ::step] = self.mult
        return Character(self.group, self.conj, m, out)

    def zero_class_mask(self) -> np.ndarray:
        return (self.reduced() == 0).all(axis=1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        if self.group is not other.group:
            return False
        m = lcm(self.conductor, other.conductor)
        a = self.with_conductor(m)
        b = other.with_conductor(m)
        return np.array_equal(a.reduced(), b.reduced())

    __hash__ = None

    def __repr__(self) -> str:
        return f"<Character deg {self.degree} on {self.group.name}>"


def _common_pair(a: Character, b: Character) -> tuple[Character, Character]:
    if a.group is not b.group:
        raise ValueError("characters live on different groups")
    m = lcm(a.conductor, b.conductor)
    return a.with_conductor(m), b.with_conductor(m)


def product(a: Character, b: Character) -> Character:
    """Pointwise product of class functions (a character, possibly reducible)."""
    a, b = _common_pair(a, b)
    return Character(a.group, a.conj, a.conductor, fold_product(a.mult, b.mult, a.conductor))


def conjugate(a: Character) -> Character:
    return Character(a.group, a.conj, a.conductor, conj_vec(a.mult, a.conductor))


def _fold_weighted(a_mult: np.ndarray, b_mult: np.ndarray, weights: np.ndarray, e: int) -> np.ndarray:
    """sum_i w_i * (value_a_i * value_b_i) as an unreduced length-e vector."""
    wa = a_mult * weights[:, None]
    bound = int(wa.max(initial=0)) * int(b_mult.max(initial=0)) * a_mult.shape[0]
    if bound < 2**62:
        m = wa.T @ b_mult  # (e, e) exact in int64
    else:  # pragma: no cover - beyond desk scale
        m = wa.T.astype(object) @ b_mult.astype(object)
    out = np.zeros(e, dtype=m.dtype)
    for s in range(e):
        out[(np.arange(e) + s) % e] += m[s]
    return out


def inner_product(a: Character, b: Character) -> Fraction:
    """Exact [a, b] = (1/|G|) sum over classes of size * a * conj(b).

    For genuine characters the result is a nonnegative rational integer;
    a non-integer here signals a broken table.
    """
    a, b = _common_pair(a, b)
    e = a.conductor
    fold = _fold_weighted(a.mult, conj_vec(b.mult, e), a.conj.sizes, e)
    red = reduce_canonical(fold, e)
    if (red[1:] != 0).any():
        raise TableConsistencyError("inner product of characters is not rational")
    val = Fraction(int(red[0]), a.group.order)
    if val.denominator != 1 or val < 0:
        raise TableConsistencyError(f"inner product of characters is not a nonnegative integer: {val}")
    return val


@dataclass(frozen=True)
class Decomposition:
    """Multiset of irreducible constituents: (row index, multiplicity > 0)."""

    table: "CharacterTable"
    pairs: tuple[tuple[int, int], ...]

    @property
    def support_size(self) -> int:
        return len(self.pairs)

    def multiplicity(self, row: int) -> int:
        for r, m in self.pairs:
            if r == row:
                return m
        return 0

    def constituent_degrees(self) -> tuple[int, ...]:
        return tuple(int(self.table.degrees[r]) for r, _ in self.pairs)


def decompose(f: Character, t: "CharacterTable") -> Decomposition:
    """Decompose a character into table rows; refuses non-characters."""
    if f.group is not t.group:
        raise ValueError("class function and table live on different groups")
    e = lcm(f.conductor, t.conductor)
    f = f.with_conductor(e)
    t_mult = embed_mult(t.mult, t.conductor, e)
    n = t.group.order
    mults = []
    for r in range(t.num_rows):
        fold = _fold_weighted(f.mult, conj_vec(t_mult[r], e), t.conj.sizes, e)
        red = reduce_canonical(fold, e)
        if (red[1:] != 0).any():
            raise NotACharacterError("inner product with a table row is not rational")
        num = int(red[0])
        if num % n != 0 or num < 0:
            raise NotACharacterError(
                f"multiplicity of row {r} is {Fraction(num, n)}, not a nonnegative integer"
            )
        mults.append(num // n)
    marr = np.array(mults, dtype=np.int64)
    recon = np.tensordot(marr, t_mult, axes=(0, 0))
    if not np.array_equal(reduce_canonical(recon, e), f.reduced()):
        raise NotACharacterError("reconstruction from multiplicities does not match the input")
    pairs = tuple((r, int(m)) for r, m in enumerate(mults) if m)
    return Decomposition(t, pairs)


def eta(a: Character, b: Character, t: "CharacterTable") -> int:
    """Number of distinct irreducible constituents of the product a*b."""
    return decompose(product(a, b), t).support_size


def kernel(a: Character) -> Subgroup:
    red = a.reduced()
    target = np.zeros(a.conductor, dtype=np.int64)
    target[0] = a.degree
    in_kernel = (red == target).all(axis=1)
    members = np.concatenate([a.conj.member_lists[c] for c in np.nonzero(in_kernel)[0]])
    return subgroup(a.group, members, validate=False)


def is_faithful(a: Character) -> bool:
    return kernel(a).order == 1


def char_center(a: Character) -> Subgroup:
    """Classes where |value| equals the degree, i.e. value * conj(value) = degree^2."""
    e = a.conductor
    norms = fold_product(a.mult, conj_vec(a.mult, e), e)
    red = reduce_canonical(norms, e)
    target = np.zeros(e, dtype=np.int64)
    target[0] = a.degree * a.degree
    mask = (red == target).all(axis=1)
    members = np.concatenate([a.conj.member_lists[c] for c in np.nonzero(mask)[0]])
    return subgroup(a.group, members, validate=False)


def vanishes_outside(a: Character, s: Subgroup) -> bool:
    """True iff the character is zero on every element outside s."""
    zero = a.zero_class_mask()
    smask = s.member_mask()
    for c in range(a.conj.num_classes):
        if not zero[c] and not smask[a.conj.member_lists[c]].all():
            return False
    return True


def subgroup_view(s: Subgroup, name: str | None = None) -> SubgroupView:
    """Shared SubgroupView per member set, so conjugacy data is reused."""
    cache = s.parent._cache.setdefault("subviews", {})
    view = cache.get(s.members)
    if view is None:
        view = s.as_group(name)
        cache[s.members] = view
    return view


def restrict(a: Character, h: Subgroup | SubgroupView) -> Character:
    """Values of a read along the conjugacy classes of the subgroup."""
    view = subgroup_view(h) if isinstance(h, Subgroup) else h
    if view.parent is not a.group:
        raise ValueError("subgroup does not belong to the character's group")
    hcd = conjugacy_classes(view)
    parent_classes = a.conj.class_of[view.to_parent(hcd.reps)]
    return Character(view, hcd, a.conductor, a.mult[parent_classes])


def induce(lam: Character, g: FiniteGroup) -> Character:
    """Induced character: zero-extend off the subgroup and average over
    conjugation, (lam^G)(x) = (1/|H|) * sum_y lam0(y x y^-1).

    The sum over y collapses classwise: every z in (class of x) intersected
    with H is hit |C_G(x)| times, so one pass counting how each G-class
    meets each H-class gives all values at once.
    """
    view = lam.group
    if not isinstance(view, SubgroupView) or view.parent is not g:
        raise ValueError("character must live on a subgroup view of g")
    cd = conjugacy_classes(g)
    e_g = g.exponent()
    e = lcm(lam.conductor, e_g)
    lam = lam.with_conductor(e)
    n = g.order
    h_order = view.order
    k = cd.num_classes
    hk = lam.conj.num_classes
    h_members = view.members
    gcls = cd.class_of[h_members]
    hcls = lam.conj.class_of[np.arange(view.order, dtype=np.int64)]
    counts = np.bincount(gcls * hk + hcls, minlength=k * hk).reshape(k, hk)
    centralizer = n // cd.sizes  # |C_G(x)| per class
    num = counts @ lam.mult  # (k, e): |H| * value / |C_G(x)|
    out = np.zeros((k, e), dtype=np.int64)
    for c in range(k):
        if not num[c].any():
            continue
        scaled = num[c] * int(centralizer[c])
        if (scaled % h_order == 0).all():
            out[c] = scaled // h_order
        else:
            red = reduce_canonical(scaled, e)
            if (red % h_order != 0).any():
                raise TableConsistencyError("induced value is not an algebraic integer")
            out[c] = nonneg_lift(red // h_order, e)
    return Character(g, cd, e, out)


class CharacterTable:
    """All irreducible characters of a group, exactly.

    Rows are ordered by degree, then lexicographically on the canonical
    serialized values, so the table is independent of the seed used during
    computation.
    """

    def __init__(self, group: FiniteGroup, data: dict):
        self.group = group
        self.conj: ConjugacyData = data["conjugacy"]
        self.conductor: int = data["conductor"]
        self.prime: int = data["prime"]
        self.root: int = data["root"]
        self.degrees: np.ndarray = data["degrees"]
        self.mult: np.ndarray = data["mult"]  # (R, k, e)
        self.degrees.flags.writeable = False
        self.mult.flags.writeable = False
        self.num_rows = len(self.degrees)
        self._rows: dict[int, Character] = {}
        self._reduced3: np.ndarray | None = None
        self._lookup: dict[bytes, int] | None = None
        self._modq: np.ndarray | None = None

    # -- access ----------------------------------------------------------------

    def row(self, r: int) -> Character:
        if r not in self._rows:
            if not 0 <= r < self.num_rows:
                raise IndexError(f"row index {r} out of range 0..{self.num_rows - 1}")
            self._rows[r] = Character(self.group, self.conj, self.conductor, self.mult[r])
        return self._rows[r]

    def rows(self) -> list[Character]:
        return [self.row(r) for r in range(self.num_rows)]

    def reduced3(self) -> np.ndarray:
        if self._reduced3 is None:
            red = reduce_canonical(self.mult, self.conductor)
            red.flags.writeable = False
            self._reduced3 = red
        return self._reduced3

    def _row_lookup(self) -> dict[bytes, int]:
        if self._lookup is None:
            red = self.reduced3()
            self._lookup = {red[r].tobytes(): r for r in range(self.num_rows)}
        return self._lookup

    def row_index_of(self, a: Character) -> int:
        """Index of the row equal to the given irreducible character."""
        a = a.with_conductor(self.conductor)
        idx = self._row_lookup().get(np.ascontiguousarray(a.reduced()).tobytes())
        if idx is None:
            raise ValueError("character is not a row of this table")
        return idx

    def conjugate_row(self, r: int) -> int:
        return self.row_index_of(conjugate(self.row(r)))

    def degree_multiset(self) -> dict[int, int]:
        vals, counts = np.unique(self.degrees, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def faithful_rows(self) -> list[int]:
        red = self.reduced3()
        e = self.conductor
        target = np.zeros((self.num_rows, 1, e), dtype=np.int64)
        target[:, 0, 0] = self.degrees
        kernel_classes = (red == target).all(axis=2)  # (R, k)
        return [r for r in range(self.num_rows) if kernel_classes[r].sum() == 1]

    def values_mod_prime(self) -> np.ndarray:
        """(R, k) table of values mod the working prime (zeta -> root)."""
        if self._modq is None:
            ev = eval_mod(self.mult, self.prime, self.root)
            self._modq = ev[:, :, 1 % self.conductor].copy()
            self._modq.flags.writeable = False
        return self._modq

    # -- validation --------------------------------------------------------------

    def validate(self) -> None:
        """Exact self-checks: value shapes, degree squares, and full row and
        column orthogonality over Q(zeta_e); raises TableConsistencyError."""
        n = self.group.order
        k = self.conj.num_classes
        e = self.conductor
        if self.num_rows != k:
            raise TableConsistencyError("row count differs from class count")
        if int((self.degrees.astype(object) ** 2).sum()) != n:
            raise TableConsistencyError("sum of squared degrees is not the group order")
        if not np.array_equal(self.mult.sum(axis=2), np.broadcast_to(self.degrees[:, None], (k, k))):
            raise TableConsistencyError("value multiplicities do not sum to the degree")

        # |value|^2 <= degree^2 wherever the norm is rational
        norms = reduce_canonical(fold_product(self.mult, conj_vec(self.mult, e), e), e)
        rational = (norms[:, :, 1:] == 0).all(axis=2)
        caps = np.broadcast_to((self.degrees * self.degrees)[:, None], rational.shape)
        vals = norms[:, :, 0]
        if ((vals < 0) & rational).any() or ((vals > caps) & rational).any():
            raise TableConsistencyError("a value norm exceeds the squared degree")

        dmax = int(self.degrees.max())
        bound = n * dmax * dmax + 1
        primes = primes_one_mod(e, bound, q_min=e + 1)
        row_residues: list[np.ndarray] = []
        col_residues: list[np.ndarray] = []
        for p in primes:
            wr = root_of_order(p, e)
            ev = eval_mod(self.mult, p, wr)  # (R, k, e); slice u is value at root^u
            w = self.conj.sizes % p
            g_row = np.empty((e, k, k), dtype=np.int64)
            g_col = np.empty((e, k, k), dtype=np.int64)
            for u in range(e):
                tu = ev[:, :, u]
                tcu = ev[:, :, (e - u) % e]
                a = tu * w[None, :] % p
                g_row[u] = _matmul_exact_mod(a, tcu.T, p)
                g_col[u] = _matmul_exact_mod(tu.T, tcu, p)
            row_residues.append(_inverse_dft_mod(g_row, wr, p))
            col_residues.append(_inverse_dft_mod(g_col, wr, p))
        s_row = crt_combine(row_residues, primes)
        s_col = crt_combine(col_residues, primes)

        expect_row = np.zeros((k, k, e), dtype=np.int64)
        expect_row[np.arange(k), np.arange(k), 0] = n
        if not np.array_equal(reduce_canonical(s_row, e), reduce_canonical(expect_row, e)):
            raise TableConsistencyError("row orthogonality fails")
        expect_col = np.zeros((k, k, e), dtype=np.int64)
        expect_col[np.arange(k), np.arange(k), 0] = n // self.conj.sizes
        if not np.array_equal(reduce_canonical(s_col, e), reduce_canonical(expect_col, e)):
            raise TableConsistencyError("column orthogonality fails")

    def __repr__(self) -> str:
        return f"<CharacterTable of {self.group.name}: {self.num_rows} rows>"


def _matmul_exact_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[-1]
    assert (p - 1) * (p - 1) * inner < 2**53
    return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p


def _inverse_dft_mod(g_stack: np.ndarray, wr: int, p: int) -> np.ndarray:
    """Recover unreduced fold vectors from their evaluations at root powers:
    input (e, k, k) slices at u; output (k, k, e) residues mod p."""
    e = g_stack.shape[0]
    idft = np.empty((e, e), dtype=np.int64)
    inv_e = pow(e, -1, p)
    for u in range(e):
        for t in range(e):
            idft[u, t] = pow(wr, (-u * t) % (p - 1), p) * inv_e % p
    flat = g_stack.reshape(e, -1).T  # (k*k, e)
    out = _matmul_exact_mod(flat, idft, p)
    return out.reshape(g_stack.shape[1], g_stack.shape[2], e)


def character_table(g: FiniteGroup, seed: int = 0, validate: bool = True) -> CharacterTable:
    """Exact character table; validated before it is returned."""
    data = compute_table_data(g, seed=seed)
    table = CharacterTable(g, data)
    if validate:
        table.validate()
    return table
