"""Integer root-of-unity multiplicity vectors.

Character values are stored as length-e integer vectors n where the value is
sum_t n[t] * zeta_e^t with n[t] >= 0.  This keeps all character arithmetic in
machine integers: products are cyclic convolutions, conjugation reverses
indices, and zero/equality tests go through the canonical reduction modulo
the conductor polynomial.  Helpers here are shared by the table algorithm,
character operations and the batch verifiers.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .cyclotomic import _reduction_rows

__all__ = [
    "reduction_matrix",
    "reduce_canonical",
    "conj_vec",
    "fold_product",
    "nonneg_lift",
    "primes_one_mod",
    "root_of_order",
    "eval_mod",
    "crt_combine",
]


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """(e, e) integer matrix whose row j is the canonical coefficient vector
    of zeta_e^j; right-multiplying a multiplicity vector reduces it."""
    rows = _reduction_rows(e)
    mat = np.array(rows, dtype=np.int64)
    mat.flags.writeable = False
    return mat


def reduce_canonical(n: np.ndarray, e: int) -> np.ndarray:
    """Canonical coefficient vectors for multiplicity vectors (last axis e)."""
    return np.asarray(n, dtype=np.int64) @ reduction_matrix(e)


def conj_vec(n: np.ndarray, e: int) -> np.ndarray:
    """Complex conjugation: exponent t -> -t mod e on the last axis."""
    idx = (-np.arange(e, dtype=np.int64)) % e
    return np.asarray(n)[..., idx]


def fold_product(a: np.ndarray, b: np.ndarray, e: int) -> np.ndarray:
    """Cyclic convolution along the last axis (product of values)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for s in range(e):
        out[..., (np.arange(e) + s) % e] += a * b[..., s : s + 1]
    return out


def embed_mult(n: np.ndarray, e_from: int, e_to: int) -> np.ndarray:
    """Re-express multiplicity vectors in the larger conductor e_to."""
    if e_to == e_from:
        return np.asarray(n, dtype=np.int64)
    if e_to % e_from != 0:
        raise ValueError("target conductor must be a multiple of the source")
    arr = np.asarray(n, dtype=np.int64)
    out = np.zeros(arr.shape[:-1] + (e_to,), dtype=np.int64)
    out[..., :: e_to // e_from] = arr
    return out


def nonneg_lift(canon: np.ndarray, e: int) -> np.ndarray:
    """A nonnegative multiplicity vector equal (in Q(zeta_e)) to the given
    canonical integer vector; uses 1 + zeta + ... + zeta^(e-1) = 0 for e > 1."""
    canon = np.asarray(canon, dtype=np.int64)
    if e == 1:
        if (canon < 0).any():
            raise ValueError("negative rational value cannot be a character value")
        return canon.copy()
    shift = max(0, int(-canon.min()))
    return canon + shift


def primes_one_mod(e: int, min_product: int, q_min: int = 2) -> list[int]:
    """Ascending primes p ≡ 1 (mod e), p >= q_min, until their product
    exceeds min_product."""
    from .groups import _is_prime

    out: list[int] = []
    prod = 1
    p = max(q_min, e + 1)
    # align to 1 mod e
    if e > 1:
        p += (1 - p) % e
    else:
        p = max(p, 2)
    while prod <= min_product:
        if _is_prime(p):
            out.append(p)
            prod *= p
        p += e if e > 1 else 1
    return out


def root_of_order(q: int, e: int) -> int:
    """An element of exact multiplicative order e in F_q (requires e | q-1)."""
    if (q - 1) % e != 0:
        raise ValueError(f"{e} does not divide {q}-1")
    if e == 1:
        return 1
    from .groups import _prime_factors

    rs = _prime_factors(e)
    for a in range(2, q):
        b = pow(a, (q - 1) // e, q)
        if b != 1 and all(pow(b, e // r, q) != 1 for r in rs):
            return b
    raise AssertionError("no element of required order found")


def eval_mod(n: np.ndarray, q: int, root: int) -> np.ndarray:
    """Evaluate multiplicity vectors at all powers of `root` mod q.

    Input shape (..., e); output shape (..., e) where output[..., u] is the
    value with zeta_e -> root^u, reduced mod q.
    """
    arr = np.asarray(n, dtype=np.int64)
    e = arr.shape[-1]
    t = np.arange(e, dtype=np.int64)
    powers = np.ones((e, e), dtype=np.int64)
    for u in range(e):
        powers[:, u] = np.array([pow(root, int(u * tt) % (q - 1) if q > 1 else 0, q) for tt in t])
    flat = arr.reshape(-1, e)
    # float64 matmul is exact here: entries and sums stay far below 2^53
    assert abs(flat).max(initial=0) * (q - 1) * e < 2**52
    out = np.rint(flat.astype(np.float64) @ powers.astype(np.float64)).astype(np.int64) % q
    return out.reshape(arr.shape)


def crt_combine(residues: list[np.ndarray], moduli: list[int]) -> np.ndarray:
    """Combine nonnegative residue arrays to the unique representative in
    [0, prod(moduli)); the product must stay below 2^62."""
    prod = 1
    for m in moduli:
        prod *= m
    if prod >= 2**62:
        raise ValueError("modulus product too large for int64 CRT")
    x = np.zeros_like(np.asarray(residues[0], dtype=np.int64))
    mcur = 1
    for r, m in zip(residues, moduli):
        r = np.asarray(r, dtype=np.int64) % m
        # x + mcur * t ≡ r (mod m)  =>  t ≡ (r - x) / mcur (mod m)
        inv = pow(mcur % m, -1, m)
        t = ((r - x) % m) * inv % m
        x = x + mcur * t
        mcur *= m
    return x
