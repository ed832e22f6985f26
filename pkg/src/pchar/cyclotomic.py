"""Exact arithmetic in the cyclotomic field Q(zeta_e).

Values are kept in a canonical form: a coefficient vector over the power
basis 1, zeta, ..., zeta^(phi(e)-1), obtained by reducing modulo the e-th
cyclotomic polynomial.  Equal values therefore have identical coefficient
vectors, which makes zero tests and equality exact.  For a prime conductor
p the basis is 1, zeta, ..., zeta^(p-2) via zeta^(p-1) = -(1 + ... + zeta^(p-2)).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Iterable, Sequence

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "cyc_root",
    "cyc_add",
    "cyc_mul",
    "cyc_neg",
    "cyc_inv",
    "cyc_conj",
    "cyc_is_rational_integer",
    "lemma_2_1_check",
    "lemma_2_1_random_suite",
]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_monic_int(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    rem = num[:dd]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of the e-th cyclotomic polynomial, ascending."""
    if e < 1:
        raise ValueError(f"conductor must be positive, got {e}")
    if e == 1:
        return (-1, 1)
    num = [0] * e + [1]
    num[0] = -1  # x^e - 1
    for d in _divisors(e):
        if d < e:
            num, rem = _poly_divmod_monic_int(num, list(cyclotomic_polynomial(d)))
            if rem:
                raise AssertionError("cyclotomic polynomial division left a remainder")
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_rows(e: int) -> tuple[tuple[int, ...], ...]:
    """Row j is the canonical integer coefficient vector of zeta_e^j, length e."""
    phi = cyclotomic_polynomial(e)
    deg = len(phi) - 1
    rows: list[tuple[int, ...]] = []
    for j in range(deg):
        row = [0] * e
        row[j] = 1
        rows.append(tuple(row))
    # x^j for j >= deg: x * previous, reduced by the monic relation
    prev = list(rows[-1]) if deg > 0 else [0] * e
    for _ in range(deg, e):
        cur = [0] + prev[:-1]
        lead = cur[deg] if deg < e else 0
        if lead:
            cur[deg] = 0
            for t in range(deg):
                cur[t] -= lead * phi[t]
        rows.append(tuple(cur))
        prev = cur
    return tuple(rows)


def _canonical(e: int, coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    rows = _reduction_rows(e)
    out = [Fraction(0)] * e
    for j, c in enumerate(coeffs):
        if c:
            row = rows[j % e]
            for t in range(e):
                if row[t]:
                    out[t] += c * row[t]
    return tuple(out)


class Cyclotomic:
    """An exact element of Q(zeta_e), immutable."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable, *, _canonical_form: bool = False):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        vals = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(vals) > conductor:
            raise ValueError("coefficient vector longer than conductor")
        vals += [Fraction(0)] * (conductor - len(vals))
        object.__setattr__(self, "conductor", conductor)
        if _canonical_form:
            object.__setattr__(self, "coeffs", tuple(vals))
        else:
            object.__setattr__(self, "coeffs", _canonical(conductor, vals))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(x, conductor: int = 1) -> "Cyclotomic":
        c = [Fraction(x)] + [Fraction(0)] * (conductor - 1)
        return Cyclotomic(conductor, c, _canonical_form=True)

    @staticmethod
    def root(e: int, k: int = 1) -> "Cyclotomic":
        """zeta_e^k in canonical form (k reduced mod e)."""
        coeffs = [Fraction(0)] * e
        coeffs[k % e] = Fraction(1)
        return Cyclotomic(e, coeffs)

    # -- conductor handling ------------------------------------------------

    def embed(self, new_conductor: int) -> "Cyclotomic":
        """Image under Q(zeta_e) -> Q(zeta_m), zeta_e -> zeta_m^(m/e)."""
        m = new_conductor
        if m % self.conductor != 0:
            raise ValueError(f"cannot embed conductor {self.conductor} into {m}")
        if m == self.conductor:
            return self
        step = m // self.conductor
        out = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            if c:
                out[j * step] += c
        return Cyclotomic(m, out)

    @staticmethod
    def _common(a: "Cyclotomic", b: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if a.conductor == b.conductor:
            return a, b
        m = lcm(a.conductor, b.conductor)
        return a.embed(m), b.embed(m)

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        return Cyclotomic.from_rational(x)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Cyclotomic":
        a, b = Cyclotomic._common(self, Cyclotomic._coerce(other))
        out = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
        return Cyclotomic(a.conductor, out, _canonical_form=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs), _canonical_form=True)

    def __sub__(self, other) -> "Cyclotomic":
        return self + (-Cyclotomic._coerce(other))

    def __rsub__(self, other) -> "Cyclotomic":
        return Cyclotomic._coerce(other) - self

    def __mul__(self, other) -> "Cyclotomic":
        a, b = Cyclotomic._common(self, Cyclotomic._coerce(other))
        e = a.conductor
        out = [Fraction(0)] * e
        for i, ci in enumerate(a.coeffs):
            if ci:
                for j, cj in enumerate(b.coeffs):
                    if cj:
                        out[(i + j) % e] += ci * cj
        return Cyclotomic(e, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm
        against the (irreducible) conductor polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic value")
        e = self.conductor
        phi = [Fraction(c) for c in cyclotomic_polynomial(e)]
        a = _trim(list(self.coeffs[: len(phi) - 1]))
        # extended gcd of a(x) and the irreducible phi(x) over Q;
        # invariant: s1 * a == r1 (mod phi)
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while not (len(r1) == 1 and r1[0] != 0):
            if len(r1) == 1 and r1[0] == 0:
                raise AssertionError("gcd with irreducible conductor polynomial degenerated")
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul_frac(q, s1))
        unit = r1[0]
        inv_coeffs = [c / unit for c in s1]
        return Cyclotomic(e, inv_coeffs)

    def __truediv__(self, other) -> "Cyclotomic":
        return self * Cyclotomic._coerce(other).inverse()

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, the Galois map zeta -> zeta^(-1)."""
        e = self.conductor
        out = [Fraction(0)] * e
        for j, c in enumerate(self.coeffs):
            if c:
                out[(-j) % e] += c
        return Cyclotomic(e, out)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def rational_integer(self) -> int | None:
        """The integer this value equals, or None if it is not one."""
        if not self.is_rational():
            return None
        c = self.coeffs[0]
        return int(c) if c.denominator == 1 else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = Cyclotomic._common(self, Cyclotomic._coerce(other))
        return a.coeffs == b.coeffs

    __hash__ = None  # mutable-free but embedding-based equality; not hashable

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                if j == 0:
                    terms.append(str(c))
                else:
                    terms.append(f"{c}*z{self.conductor}^{j}" if c != 1 else f"z{self.conductor}^{j}")
        return "Cyc(" + (" + ".join(terms) if terms else "0") + ")"

    # -- interchange ----------------------------------------------------------

    def serialize(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    def approx_complex(self) -> complex:
        """Display-only floating approximation; never used in computations."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))


def _trim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p if p else [Fraction(0)]


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    den = _trim(den)
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [Fraction(0)], _trim(num)
    quot = [Fraction(0)] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] / lead
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    return _trim(quot), _trim(num[:dd] or [Fraction(0)])


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


# -- spec-level functional aliases ------------------------------------------


def cyc_root(e: int, k: int) -> Cyclotomic:
    return Cyclotomic.root(e, k)


def cyc_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def cyc_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def cyc_neg(a: Cyclotomic) -> Cyclotomic:
    return -a


def cyc_inv(a: Cyclotomic) -> Cyclotomic:
    return a.inverse()


def cyc_conj(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def cyc_is_rational_integer(a: Cyclotomic) -> int | None:
    return a.rational_integer()


# -- prime-conductor linear independence -------------------------------------


def lemma_2_1_check(p: int, support: Sequence[int], coeffs: Sequence[int]) -> bool:
    """Whether sum_i c_i * zeta_p^i vanishes, for integer c_i indexed by a
    proper subset of {0..p-1}.  For prime p this is True exactly when all
    c_i are zero, which is the correctness property of the prime-conductor
    basis reduction; computing the sum exactly makes the statement executable.
    """
    if p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1)):
        raise ValueError(f"p must be prime, got {p}")
    sup = list(support)
    if len(set(sup)) != len(sup):
        raise ValueError("support indices must be distinct")
    if not all(0 <= i < p for i in sup):
        raise ValueError("support indices must lie in 0..p-1")
    if len(sup) >= p:
        raise ValueError("support must be a proper subset of {0..p-1}")
    if len(coeffs) != len(sup):
        raise ValueError("coeffs must be indexed by the support")
    acc = [0] * p
    for i, c in zip(sup, coeffs):
        acc[i] += int(c)
    # canonical reduction for prime conductor: zeta^(p-1) = -(1 + ... + zeta^(p-2))
    top = acc[p - 1]
    return all(acc[j] - top == 0 for j in range(p - 1))


def lemma_2_1_random_suite(
    primes: Sequence[int] = (3, 5, 7, 11),
    trials: int = 10_000,
    seed: int = 0,
    coeff_bound: int = 50,
) -> int:
    """Run random nonzero proper-support integer vectors through
    lemma_2_1_check; returns how many falsely reduced to zero (expect 0)."""
    rng = random.Random(seed)
    false_zeros = 0
    for p in primes:
        for _ in range(trials):
            size = rng.randrange(1, p)  # proper subset
            support = rng.sample(range(p), size)
            coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in support]
            if all(c == 0 for c in coeffs):
                coeffs[rng.randrange(size)] = rng.randint(1, coeff_bound)
            if lemma_2_1_check(p, support, coeffs):
                false_zeros += 1
    return false_zeros
