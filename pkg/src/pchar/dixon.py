"""Exact character tables by eigenspace splitting of class matrices over F_q.

Pipeline: pick the smallest prime q ≡ 1 (mod exponent) with q > 2*sqrt(|G|);
split the simultaneous eigenspaces of the class-algebra matrices over F_q,
first with central classes (whose eigenvalues are among the powers of a fixed
order-e root of unity mod q), then with seeded random combinations of all
class matrices until every eigenspace is one-dimensional; recover degrees
from orthogonality and lift each value to an exact vector of root-of-unity
multiplicities by discrete Fourier counting over the power map of class
representatives.  Everything is integer arithmetic; nothing is approximated.
"""

from __future__ import annotations

import numpy as np

from .cycvec import root_of_order
from .errors import TableConsistencyError
from .groups import ConjugacyData, FiniteGroup, conjugacy_classes, _is_prime

__all__ = ["dixon_prime", "compute_table_data"]


def dixon_prime(exponent: int, order: int) -> int:
    """Smallest prime q ≡ 1 (mod exponent) with q^2 > 4*order."""
    q = exponent + 1
    if exponent == 1:
        q = 2
    while True:
        if q * q > 4 * order and _is_prime(q):
            return q
        q += exponent if exponent > 1 else 1


# -- modular linear algebra ---------------------------------------------------


def _inv_table(q: int) -> np.ndarray:
    t = np.empty(q, dtype=np.int64)
    t[0] = 0
    for x in range(1, q):
        t[x] = pow(x, q - 2, q)
    return t


def _matmul_mod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    inner = a.shape[-1]
    if (q - 1) * (q - 1) * inner < 2**53:
        c = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    else:  # pragma: no cover - desk scale never reaches this
        c = a.astype(object) @ b.astype(object)
        c = np.array(c % q, dtype=np.int64)
    return c % q


def _rref_mod(a: np.ndarray, q: int, invt: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_q; returns (R, pivot column list)."""
    a = np.array(a % q, dtype=np.int64)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * invt[a[r, c]]) % q
        col = a[:, c].copy()
        col[r] = 0
        nzrows = np.nonzero(col)[0]
        if nzrows.size:
            a[nzrows] = (a[nzrows] - np.outer(col[nzrows], a[r])) % q
        pivots.append(c)
        r += 1
    return a, pivots


def _nullspace_mod(a: np.ndarray, q: int, invt: np.ndarray) -> np.ndarray:
    """Column basis of the kernel of a over F_q, shape (n, dim)."""
    n = a.shape[1]
    r, pivots = _rref_mod(a, q, invt)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, p in enumerate(pivots):
            basis[p, j] = (-r[i, f]) % q
    return basis


def _column_rref(b: np.ndarray, q: int, invt: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Normalize a column basis so rows at the pivot indices form an identity."""
    r, pivots = _rref_mod(b.T, q, invt)
    d = len(pivots)
    if d != b.shape[1]:
        raise TableConsistencyError("basis columns are linearly dependent")
    return r[:d].T, pivots


# -- class matrices -----------------------------------------------------------


def _class_matrix(g: FiniteGroup, cd: ConjugacyData, i: int, inv_tbl: np.ndarray) -> np.ndarray:
    """M_i[j, k] = #{x in C_i : x^-1 * rep_k lies in C_j}."""
    k = cd.num_classes
    reps = cd.reps
    m = np.zeros((k, k), dtype=np.int64)
    cols = np.arange(k)
    for x in cd.member_lists[i]:
        y = g.mul_vec(int(inv_tbl[x]), reps)
        m[cd.class_of[y], cols] += 1
    return m


def _random_combination(
    g: FiniteGroup, cd: ConjugacyData, q: int, coeffs: np.ndarray, inv_tbl: np.ndarray
) -> np.ndarray:
    """sum_i coeffs[i] * M_i assembled in one vectorized pass per column:
    column k counts x (weighted by the coefficient of x's class) with
    x^-1 * rep_k in class j."""
    k = cd.num_classes
    m = np.zeros((k, k), dtype=np.int64)
    weights = coeffs[cd.class_of].astype(np.float64)
    weights[cd.member_lists[0]] = 0.0  # identity class excluded
    for col in range(k):
        y = g.mul_vec(inv_tbl, int(cd.reps[col]))
        acc = np.bincount(cd.class_of[y], weights=weights, minlength=k)
        m[:, col] = np.rint(acc).astype(np.int64)
    # exactness guard: counts * max coefficient stay far below 2^53
    assert (q - 1) * g.order < 2**52
    return m % q


# -- eigenspace splitting -----------------------------------------------------


def _roots_in_field(poly: np.ndarray, q: int) -> list[int]:
    xs = np.arange(q, dtype=np.int64)
    acc = np.full(q, int(poly[-1]) % q, dtype=np.int64)
    for c in poly[-2::-1]:
        acc = (acc * xs + int(c)) % q
    return [int(x) for x in xs[acc == 0]]


def _eigenvalues_minpoly(a: np.ndarray, q: int, invt: np.ndarray, rng: np.random.Generator) -> list[int]:
    """Some eigenvalues of a diagonalizable matrix over F_q: the roots of the
    minimal polynomial of one random vector.  A non-generic vector can miss
    eigenspaces, so callers accumulate over repeated draws."""
    d = a.shape[0]
    af = a.astype(np.float64)
    while True:
        v = rng.integers(0, q, d, dtype=np.int64)
        if not v.any():
            continue
        rmat = np.zeros((0, d), dtype=np.int64)
        amat = np.zeros((0, d + 2), dtype=np.int64)
        piv_cols: list[int] = []
        cur = v.copy()
        for s in range(d + 1):
            row = cur.copy()
            aug = np.zeros(d + 2, dtype=np.int64)
            aug[s] = 1
            if piv_cols:
                cf = row[piv_cols]
                row = (row - cf @ rmat) % q
                aug = (aug - cf @ amat) % q
            if row.any():
                pc = int(np.nonzero(row)[0][0])
                scale = int(invt[row[pc]])
                row = (row * scale) % q
                aug = (aug * scale) % q
                # keep the stored rows fully reduced at the new pivot
                if piv_cols:
                    col = rmat[:, pc].copy()
                    nz = np.nonzero(col)[0]
                    if nz.size:
                        rmat[nz] = (rmat[nz] - np.outer(col[nz], row)) % q
                        amat[nz] = (amat[nz] - np.outer(col[nz], aug)) % q
                rmat = np.vstack([rmat, row])
                amat = np.vstack([amat, aug])
                piv_cols.append(pc)
                cur = np.rint(af @ cur.astype(np.float64)).astype(np.int64) % q
            else:
                return _roots_in_field(aug[: s + 1], q)
        raise AssertionError("no linear dependency among d+1 Krylov vectors")


def _split_blocks(
    blocks: list[tuple[np.ndarray, list[int]]],
    m: np.ndarray,
    q: int,
    invt: np.ndarray,
    candidates: list[int] | None,
    rng: np.random.Generator,
) -> list[tuple[np.ndarray, list[int]]]:
    out: list[tuple[np.ndarray, list[int]]] = []
    eye_cache: dict[int, np.ndarray] = {}
    for basis, piv in blocks:
        d = basis.shape[1]
        if d == 1:
            out.append((basis, piv))
            continue
        mb = _matmul_mod(m, basis, q)
        act = mb[piv, :]
        if not np.array_equal(_matmul_mod(basis, act, q), mb):
            raise TableConsistencyError("subspace is not invariant under class matrix")
        if d not in eye_cache:
            eye_cache[d] = np.eye(d, dtype=np.int64)
        eye = eye_cache[d]
        found = 0
        seen: set[int] = set()
        pieces: list[tuple[np.ndarray, list[int]]] = []
        for attempt in range(12):
            eigvals = candidates if candidates is not None else _eigenvalues_minpoly(act, q, invt, rng)
            for w in eigvals:
                if w in seen:
                    continue
                seen.add(w)
                ker = _nullspace_mod((act - w * eye) % q, q, invt)
                if ker.shape[1] == 0:
                    continue
                newb = _matmul_mod(basis, ker, q)
                newb, newpiv = _column_rref(newb, q, invt)
                pieces.append((newb, newpiv))
                found += ker.shape[1]
            if found == d or candidates is not None:
                break
        if found != d:
            raise TableConsistencyError("eigenspace dimensions do not fill the block")
        out.extend(pieces)
    return out


def _split(
    g: FiniteGroup,
    cd: ConjugacyData,
    q: int,
    wroot: int,
    seed: int,
    max_rounds: int,
) -> np.ndarray:
    k = cd.num_classes
    e = g.exponent()
    invt = _inv_table(q)
    inv_tbl = g.inverse_table()
    rng = np.random.default_rng(seed)
    blocks: list[tuple[np.ndarray, list[int]]] = [(np.eye(k, dtype=np.int64), list(range(k)))]

    def done() -> bool:
        return all(b.shape[1] == 1 for b, _ in blocks)

    # phase 1: central (singleton) classes; eigenvalues are powers of wroot
    for c in range(1, k):
        if done():
            break
        if cd.sizes[c] != 1:
            continue
        o = int(cd.rep_orders[c])
        cands = sorted({pow(wroot, (e // o) * t, q) for t in range(o)})
        m = _class_matrix(g, cd, c, inv_tbl)
        blocks = _split_blocks(blocks, m, q, invt, cands, rng)

    # phase 2: seeded random combinations of all class matrices
    rounds = 0
    while not done():
        if rounds >= max_rounds:
            raise TableConsistencyError(
                f"eigenspace splitting incomplete after {max_rounds} rounds"
            )
        coeffs = rng.integers(1, q, k, dtype=np.int64)
        m = _random_combination(g, cd, q, coeffs, inv_tbl)
        blocks = _split_blocks(blocks, m, q, invt, None, rng)
        rounds += 1

    vectors = np.empty((k, k), dtype=np.int64)
    for r, (basis, _) in enumerate(blocks):
        v = basis[:, 0]
        if v[0] == 0:
            raise TableConsistencyError("eigenvector vanishes at the identity class")
        vectors[r] = (v * invt[v[0]]) % q
    if len({v.tobytes() for v in vectors}) != k:
        raise TableConsistencyError("duplicate eigenvectors after splitting")
    return vectors


# -- lifting -------------------------------------------------------------------


def _power_classes(g: FiniteGroup, cd: ConjugacyData) -> list[np.ndarray]:
    out = []
    for i in range(cd.num_classes):
        o = int(cd.rep_orders[i])
        rep = int(cd.reps[i])
        pcs = np.empty(o, dtype=np.int64)
        cur = g.identity
        for s in range(o):
            pcs[s] = cd.class_of[cur]
            cur = g.mul(cur, rep)
        out.append(pcs)
    return out


def compute_table_data(g: FiniteGroup, seed: int = 0, max_rounds: int = 24) -> dict:
    """Compute degrees and exact value-multiplicity vectors for Irr(G).

    Returns a dict with conjugacy data, conductor (= exponent), the working
    prime q, its order-e root, integer `degrees` (R,) and `mult` (R, k, e),
    rows sorted by degree then lexicographically on canonical coefficients.
    """
    cd = conjugacy_classes(g)
    n = g.order
    e = g.exponent()
    k = cd.num_classes
    q = dixon_prime(e, n)
    wroot = root_of_order(q, e)

    last_err: Exception | None = None
    vectors = None
    for attempt in (seed, seed + 1):
        try:
            vectors = _split(g, cd, q, wroot, attempt, max_rounds)
            break
        except TableConsistencyError as exc:
            last_err = exc
    if vectors is None:
        raise TableConsistencyError(f"class matrix splitting failed for {g.name}: {last_err}")

    invt = _inv_table(q)
    inv_sizes = invt[cd.sizes % q]

    # degrees from row orthogonality: d^2 = |G| / sum_i w_i w_i' / |C_i|
    s = (vectors * vectors[:, cd.inverse_class] % q * inv_sizes[None, :] % q).sum(axis=1) % q
    if (s == 0).any():
        raise TableConsistencyError("degenerate orthogonality sum")
    d2 = n % q * invt[s] % q
    sqrt_min = np.full(q, -1, dtype=np.int64)
    for x in range((q - 1) // 2, 0, -1):
        sqrt_min[x * x % q] = x
    degrees = sqrt_min[d2]
    if (degrees <= 0).any():
        raise TableConsistencyError("character degree is not a quadratic residue lift")
    if int((degrees.astype(object) ** 2).sum()) != n:
        raise TableConsistencyError("degree squares do not sum to the group order")

    # values mod q, then root-of-unity multiplicities per class
    values = degrees[:, None] * vectors % q * inv_sizes[None, :] % q
    mult = np.zeros((k, k, e), dtype=np.int64)
    pcs = _power_classes(g, cd)
    dft_cache: dict[int, np.ndarray] = {}
    for i in range(k):
        o = int(cd.rep_orders[i])
        if o not in dft_cache:
            wo = pow(wroot, e // o, q)
            mat = np.empty((o, o), dtype=np.int64)
            for ss in range(o):
                for t in range(o):
                    mat[ss, t] = pow(wo, (-ss * t) % o, q)
            dft_cache[o] = mat
        dft = dft_cache[o]
        vp = values[:, pcs[i]]  # (R, o)
        counts = _matmul_mod(vp, dft, q) * invt[o % q] % q
        if (counts > degrees[:, None]).any():
            raise TableConsistencyError("lifted multiplicity exceeds the degree")
        if not np.array_equal(counts.sum(axis=1), degrees):
            raise TableConsistencyError("lifted multiplicities do not sum to the degree")
        mult[:, i, :: e // o] = counts

    # deterministic, seed-independent row order
    from .cycvec import reduce_canonical

    reduced = reduce_canonical(mult, e).reshape(k, -1)
    if abs(reduced).max(initial=0) >= 2**31:  # pragma: no cover
        raise TableConsistencyError("canonical coefficients out of sortable range")
    sort_bytes = (reduced + 2**31).astype(">u4")  # big-endian: bytewise lex == numeric lex
    keys = sorted(range(k), key=lambda r: (int(degrees[r]), sort_bytes[r].tobytes()))
    order = np.array(keys, dtype=np.int64)
    return {
        "conjugacy": cd,
        "conductor": e,
        "prime": q,
        "root": wroot,
        "degrees": degrees[order].copy(),
        "mult": mult[order].copy(),
    }
