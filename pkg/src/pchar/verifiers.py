"""Executable checks for the verified statements.

Statement ids: theorem-a, main-lemma, lemma-2-2, lemma-4-1, lemma-5-1,
theorem-b, conjecture-scan (the example statement lives in constructions).
Each verifier returns a VerificationReport with pass/fail/skipped status and
deterministic witnesses on failure.

Pair surveys over all faithful pairs are computed with modular arithmetic:
constituent multiplicities of a product of table rows are nonnegative
integers bounded by the product of the two degrees, so residues modulo
enough primes determine them exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .characters import CharacterTable, character_table, induce, inner_product, subgroup_view
from .cycvec import crt_combine, eval_mod, primes_one_mod, root_of_order
from .errors import ResourceLimitError, TableConsistencyError
from .groups import (
    FiniteGroup,
    Subgroup,
    all_normal_subgroups,
    center,
    group_prime,
    is_nilpotent,
    is_normal,
    normal_subgroups_between,
)

__all__ = [
    "VerificationReport",
    "EtaSurvey",
    "faithful_pair_survey",
    "self_conjugate_etas",
    "verify_theorem_a",
    "verify_main_lemma",
    "verify_lemma_2_2",
    "verify_lemma_4_1",
    "verify_lemma_4_1_all",
    "verify_lemma_5_1",
    "verify_theorem_b",
    "conjecture_scan",
    "verify_conjecture_scan",
    "permissible_degrees",
    "degree_is_permissible",
]


@dataclass
class VerificationReport:
    statement: str
    group: str
    status: str  # "pass" | "fail" | "skipped"
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def as_dict(self, include_timings: bool = False) -> dict:
        return {
            "statement": self.statement,
            "group": self.group,
            "status": self.status,
            "witnesses": self.witnesses,
            "eta_histogram": self.details.get("eta_histogram", {}),
            "details": {k: v for k, v in self.details.items() if k != "eta_histogram"},
            "elapsed_ms": round(self.elapsed_ms, 3) if include_timings else 0,
        }


def _timed(statement: str, group: str, fn) -> VerificationReport:
    t0 = time.perf_counter()
    status, witnesses, details = fn()
    return VerificationReport(
        statement=statement,
        group=group,
        status=status,
        witnesses=witnesses,
        details=details,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


# ---------------------------------------------------------------------------
# modular pair machinery
# ---------------------------------------------------------------------------


def _values_mod(table: CharacterTable, p: int) -> np.ndarray:
    cache = table.__dict__.setdefault("_values_mod_cache", {})
    if p not in cache:
        if p == table.prime:
            cache[p] = table.values_mod_prime()
        else:
            wr = root_of_order(p, table.conductor)
            v = eval_mod(table.mult, p, wr)[:, :, 1 % table.conductor].copy()
            v.flags.writeable = False
            cache[p] = v
    return cache[p]


def _modular_set(table: CharacterTable, bound: int) -> list[tuple[int, np.ndarray, np.ndarray, np.ndarray]]:
    """(p, values, conj-values, class-weights/|G| mod p) with prod(p) > bound."""
    e = table.conductor
    primes = primes_one_mod(e, bound, q_min=table.prime)
    out = []
    inv_cls = table.conj.inverse_class
    for p in primes:
        t = _values_mod(table, p)
        tinv = t[:, inv_cls]
        c = table.conj.sizes % p * pow(table.group.order % p, -1, p) % p
        out.append((p, t, tinv, c))
    return out


def _pair_multiplicities(table: CharacterTable, r: int, others: np.ndarray, mods) -> np.ndarray:
    """Exact constituent multiplicities of row_r * row_s for s in `others`;
    shape (len(others), num_rows)."""
    residues = []
    moduli = []
    for p, t, tinv, c in mods:
        a = t[others] * (t[r] * c % p)[None, :] % p
        mhat = np.rint(a.astype(np.float64) @ tinv.T.astype(np.float64)).astype(np.int64) % p
        residues.append(mhat)
        moduli.append(p)
    m = crt_combine(residues, moduli)
    limit = int(table.degrees[r]) * table.degrees[others]
    if (m > limit[:, None]).any():
        raise TableConsistencyError("pair multiplicity exceeds its degree bound")
    return m


@dataclass
class EtaSurvey:
    """Every faithful unordered pair: eta, degrees, vanishing flags, and the
    full decomposition multiplicities in compressed form."""

    group: str
    prime: int
    faithful: np.ndarray  # faithful row indices
    degrees: np.ndarray  # degree per table row
    vanishes_outside_center: np.ndarray  # flag per table row (faithful ones meaningful)
    pair_r: np.ndarray
    pair_s: np.ndarray
    etas: np.ndarray
    indptr: np.ndarray  # CSR over pairs into (theta_idx, theta_mult)
    theta_idx: np.ndarray
    theta_mult: np.ndarray

    @property
    def num_pairs(self) -> int:
        return len(self.pair_r)

    def eta_histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.etas, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def pair_decomposition(self, idx: int) -> list[tuple[int, int]]:
        lo, hi = int(self.indptr[idx]), int(self.indptr[idx + 1])
        return [(int(t), int(m)) for t, m in zip(self.theta_idx[lo:hi], self.theta_mult[lo:hi])]

    def conjecture_flags(self) -> list[dict]:
        p = self.prime
        out = []
        for idx in range(self.num_pairs):
            n = int(self.etas[idx])
            if 2 * n - 1 > p and n < p:
                out.append(
                    {
                        "pair": [int(self.pair_r[idx]), int(self.pair_s[idx])],
                        "eta": n,
                        "note": "CONJECTURE COUNTEREXAMPLE CANDIDATE",
                    }
                )
        return out


def _center_class_mask(table: CharacterTable) -> np.ndarray:
    zmask = center(table.group).member_mask()
    return (table.conj.sizes == 1) & zmask[table.conj.reps]


def _vanishing_flags(table: CharacterTable) -> np.ndarray:
    red = table.reduced3()
    nonzero_class = ~(red == 0).all(axis=2)  # (R, k)
    ok_class = _center_class_mask(table)
    return ~(nonzero_class & ~ok_class[None, :]).any(axis=1)


def faithful_pair_survey(table: CharacterTable) -> EtaSurvey:
    """Decompositions of row_i * row_j over all unordered faithful pairs."""
    if getattr(table, "_survey", None) is not None:
        return table._survey
    p = group_prime(table.group)
    if p is None:
        raise ValueError("pair surveys require a group of prime-power order")
    faithful = np.array(table.faithful_rows(), dtype=np.int64)
    dmax = int(table.degrees[faithful].max()) if len(faithful) else 1
    mods = _modular_set(table, dmax * dmax + 1)
    pair_r: list[np.ndarray] = []
    pair_s: list[np.ndarray] = []
    etas: list[np.ndarray] = []
    tidx: list[np.ndarray] = []
    tmult: list[np.ndarray] = []
    counts: list[np.ndarray] = []
    for pos, r in enumerate(faithful):
        others = faithful[pos:]
        m = _pair_multiplicities(table, int(r), others, mods)
        nz = m != 0
        etas.append(nz.sum(axis=1))
        pair_r.append(np.full(len(others), r, dtype=np.int64))
        pair_s.append(others)
        rows, cols = np.nonzero(nz)
        tidx.append(cols)
        tmult.append(m[rows, cols])
        counts.append(nz.sum(axis=1))
    num = sum(len(x) for x in pair_r)
    indptr = np.zeros(num + 1, dtype=np.int64)
    if num:
        indptr[1:] = np.cumsum(np.concatenate(counts))
    survey = EtaSurvey(
        group=table.group.name,
        prime=p,
        faithful=faithful,
        degrees=table.degrees.copy(),
        vanishes_outside_center=_vanishing_flags(table),
        pair_r=np.concatenate(pair_r) if num else np.empty(0, dtype=np.int64),
        pair_s=np.concatenate(pair_s) if num else np.empty(0, dtype=np.int64),
        etas=np.concatenate(etas) if num else np.empty(0, dtype=np.int64),
        indptr=indptr,
        theta_idx=np.concatenate(tidx) if num else np.empty(0, dtype=np.int64),
        theta_mult=np.concatenate(tmult) if num else np.empty(0, dtype=np.int64),
    )
    table._survey = survey
    return survey


def self_conjugate_etas(table: CharacterTable) -> np.ndarray:
    """eta(chi, conj(chi)) for every table row, exactly."""
    cached = getattr(table, "_selfconj_etas", None)
    if cached is not None:
        return cached
    dmax = int(table.degrees.max())
    mods = _modular_set(table, dmax * dmax + 1)
    inv_cls = table.conj.inverse_class
    residues = []
    moduli = []
    for p, t, tinv, c in mods:
        a = t * t[:, inv_cls] % p * c[None, :] % p  # row r times its conjugate
        mhat = np.rint(a.astype(np.float64) @ tinv.T.astype(np.float64)).astype(np.int64) % p
        residues.append(mhat)
        moduli.append(p)
    m = crt_combine(residues, moduli)
    if (m > (table.degrees[:, None].astype(np.int64)) ** 2).any():
        raise TableConsistencyError("self-conjugate multiplicity exceeds its bound")
    etas = (m != 0).sum(axis=1).astype(np.int64)
    table._selfconj_etas = etas
    return etas


# ---------------------------------------------------------------------------
# statements
# ---------------------------------------------------------------------------


def _require_p_group(g: FiniteGroup) -> int | None:
    return group_prime(g) if g.order > 1 else None


def verify_theorem_a(g: FiniteGroup, table: CharacterTable | None = None, seed: int = 0) -> VerificationReport:
    """Every product of two faithful irreducibles has either exactly one
    distinct constituent or more than p/2 of them."""

    def run():
        p = _require_p_group(g)
        if p is None:
            return "skipped", [], {"reason": "not a p-group of order > 1"}
        t = table if table is not None else character_table(g, seed=seed)
        survey = faithful_pair_survey(t)
        if len(survey.faithful) == 0:
            return "skipped", [], {"reason": "no faithful irreducible character (center not cyclic)"}
        bad = np.nonzero(~((survey.etas == 1) | (2 * survey.etas > p)))[0]
        witnesses = [
            {
                "pair": [int(survey.pair_r[i]), int(survey.pair_s[i])],
                "eta": int(survey.etas[i]),
                "degrees": [int(survey.degrees[survey.pair_r[i]]), int(survey.degrees[survey.pair_s[i]])],
                "p": p,
            }
            for i in bad[:32]
        ]
        details = {
            "p": p,
            "faithful_count": int(len(survey.faithful)),
            "pair_count": int(survey.num_pairs),
            "eta_histogram": survey.eta_histogram(),
        }
        return ("fail" if len(bad) else "pass"), witnesses, details

    return _timed("theorem-a", g.name, run)


def verify_main_lemma(g: FiniteGroup, table: CharacterTable | None = None, seed: int = 0) -> VerificationReport:
    """Faithful pairs with 2*eta <= p have both characters vanishing outside
    the center."""

    def run():
        p = _require_p_group(g)
        if p is None:
            return "skipped", [], {"reason": "not a p-group of order > 1"}
        t = table if table is not None else character_table(g, seed=seed)
        survey = faithful_pair_survey(t)
        if len(survey.faithful) == 0:
            return "skipped", [], {"reason": "no faithful irreducible character (center not cyclic)"}
        in_scope = np.nonzero(2 * survey.etas <= p)[0]
        witnesses = []
        eta_one = True
        for i in in_scope:
            r, s = int(survey.pair_r[i]), int(survey.pair_s[i])
            if int(survey.etas[i]) != 1:
                eta_one = False
            for row in (r, s):
                if not survey.vanishes_outside_center[row]:
                    witnesses.append(
                        {"pair": [r, s], "eta": int(survey.etas[i]), "non_vanishing_row": row}
                    )
        details = {
            "p": p,
            "pairs_in_hypothesis": int(len(in_scope)),
            "pair_count": int(survey.num_pairs),
            "all_hypothesis_pairs_have_eta_1": eta_one,
            "eta_histogram": survey.eta_histogram(),
        }
        return ("fail" if witnesses else "pass"), witnesses[:32], details

    return _timed("main-lemma", g.name, run)


def verify_lemma_2_2(
    g: FiniteGroup,
    table: CharacterTable | None = None,
    seed: int = 0,
    max_order: int = 2187,
) -> VerificationReport:
    """For normal Z < Y with |Y:Z| = p, Z inside the character center and Y
    not inside it, the character vanishes on Y minus Z."""

    def run():
        p = _require_p_group(g)
        if p is None:
            return "skipped", [], {"reason": "not a p-group of order > 1"}
        if g.order > max_order:
            return "skipped", [], {"reason": f"order {g.order} exceeds enumeration cap {max_order}"}
        t = table if table is not None else character_table(g, seed=seed)
        from .characters import char_center

        normals = all_normal_subgroups(g)
        between: dict[tuple, list[Subgroup]] = {}
        for z in normals:
            if z.order * p <= g.order:
                between[z.members] = normal_subgroups_between(g, z, p)
        checked = 0
        witnesses = []
        for r in range(t.num_rows):
            chi = t.row(r)
            zc = char_center(chi)
            zc_mask = zc.member_mask()
            red = chi.reduced()
            for z in normals:
                if not zc_mask[np.asarray(z.members)].all():
                    continue
                for y in between.get(z.members, []):
                    if zc_mask[np.asarray(y.members)].all():
                        continue  # Y inside the character center: hypothesis empty
                    diff = sorted(set(y.members) - set(z.members))
                    checked += 1
                    for x in diff:
                        c = int(t.conj.class_of[x])
                        if (red[c] != 0).any():
                            witnesses.append({"row": r, "z_order": z.order, "y_order": y.order, "element": int(x)})
                            break
        details = {"p": p, "triples_checked": checked, "rows": t.num_rows}
        return ("fail" if witnesses else "pass"), witnesses[:32], details

    return _timed("lemma-2-2", g.name, run)


def _invariant_rows(g: FiniteGroup, nview, ntable: CharacterTable) -> list[int]:
    """Rows of the subgroup table fixed by conjugation by every generator."""
    ncd = ntable.conj
    out = []
    perms = []
    for x in g.generating_set():
        xinv = g.inv(x)
        conj_elems = g.mul_vec(g.mul_vec(x, nview.to_parent(ncd.reps)), xinv)
        perms.append(ncd.class_of[nview.from_parent(conj_elems)])
    red = ntable.reduced3()
    for r in range(ntable.num_rows):
        if all(np.array_equal(red[r], red[r][perm]) for perm in perms):
            out.append(r)
    return out


def verify_lemma_4_1(
    g: FiniteGroup,
    n: Subgroup,
    table: CharacterTable | None = None,
    seed: int = 0,
) -> VerificationReport:
    """For G-invariant irreducible phi of a normal subgroup, the number of
    irreducibles of G lying over phi is 1 or at least p."""
    if n.parent is not g:
        raise ValueError("n must be a subgroup of g")
    if not is_normal(g, n):
        raise ValueError("n must be normal in g")

    def run():
        p = _require_p_group(g)
        if p is None:
            return "skipped", [], {"reason": "not a p-group of order > 1"}
        t = table if table is not None else character_table(g, seed=seed)
        nview = subgroup_view(n)
        ntable = character_table(nview, seed=seed)
        invariant = _invariant_rows(g, nview, ntable)
        witnesses = []
        counts = []
        for r in invariant:
            phi = ntable.row(r)
            ind = induce(phi, g)
            cnt = sum(1 for s in range(t.num_rows) if inner_product(ind, t.row(s)) != 0)
            counts.append(cnt)
            if cnt != 1 and cnt < p:
                witnesses.append({"phi_row": r, "count": cnt, "n_order": n.order, "p": p})
        details = {
            "p": p,
            "n_order": n.order,
            "invariant_count": len(invariant),
            "counts_histogram": _hist(counts),
        }
        return ("fail" if witnesses else "pass"), witnesses[:32], details

    return _timed("lemma-4-1", g.name, run)


def verify_lemma_4_1_all(
    g: FiniteGroup,
    table: CharacterTable | None = None,
    seed: int = 0,
    max_order: int = 243,
) -> VerificationReport:
    """Lemma 4.1 quantified over every normal subgroup (desk scale)."""

    def run():
        p = _require_p_group(g)
        if p is None:
            return "skipped", [], {"reason": "not a p-group of order > 1"}
        if g.order > max_order:
            return "skipped", [], {"reason": f"order {g.order} exceeds enumeration cap {max_order}"}
        t = table if table is not None else character_table(g, seed=seed)
        witnesses = []
        triples = 0
        hist: dict[int, int] = {}
        for n in all_normal_subgroups(g):
            rep = verify_lemma_4_1(g, n, table=t, seed=seed)
            triples += rep.details.get("invariant_count", 0)
            for k, v in rep.details.get("counts_histogram", {}).items():
                hist[k] = hist.get(k, 0) + v
            witnesses.extend(rep.witnesses)
        details = {"p": p, "normal_subgroups": len(all_normal_subgroups(g)), "triples": triples, "counts_histogram": hist}
        return ("fail" if witnesses else "pass"), witnesses[:32], details

    return _timed("lemma-4-1", g.name, run)


def _hist(values) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in values:
        out[int(v)] = out.get(int(v), 0) + 1
    return out


def permissible_degrees(n: int, strict: bool = False, cap: int = 1_000_000) -> list[int]:
    """The finite set of integers whose prime factors p satisfy p < 2n+1 and
    whose exponents t satisfy t <= n-2 (strict: t < n-2).  Materialized; the
    verifiers use the membership predicate instead for large n."""
    if n < 1:
        raise ValueError("n must be positive")
    tmax = (n - 3) if strict else (n - 2)
    primes = [p for p in range(2, 2 * n + 1) if all(p % d for d in range(2, isqrt(p) + 1)) and p > 1]
    if tmax < 0 or not primes:
        return [1]
    est = (tmax + 1) ** len(primes)
    if est > cap:
        raise ResourceLimitError(f"set of permissible degrees has about {est} elements (cap {cap})")
    out = [1]
    for p in primes:
        cur = list(out)
        for x in out:
            v = x
            for _ in range(tmax):
                v *= p
                cur.append(v)
        out = cur
    return sorted(set(out))


def degree_is_permissible(d: int, n: int, strict: bool = False) -> bool:
    if d < 1 or n < 1:
        return False
    tmax = (n - 3) if strict else (n - 2)
    if d == 1:
        return True
    if tmax < 0:
        return False
    m = d
    p = 2
    while p * p <= m:
        if m % p == 0:
            t = 0
            while m % p == 0:
                m //= p
                t += 1
            if p >= 2 * n + 1 or t > tmax:
                return False
        p += 1
    if m > 1:
        if m >= 2 * n + 1 or tmax < 1:
            return False
    return True


def verify_theorem_b(g: FiniteGroup, table: CharacterTable | None = None, seed: int = 0) -> VerificationReport:
    """Every irreducible of a nilpotent group has degree in the permissible
    set for n = eta(chi, conj(chi)); also records the strict-bound reading."""

    def run():
        if not is_nilpotent(g):
            return "skipped", [], {"reason": "group is not nilpotent"}
        t = table if table is not None else character_table(g, seed=seed)
        etas = self_conjugate_etas(t)
        witnesses = []
        strict_fail = []
        for r in range(t.num_rows):
            d = int(t.degrees[r])
            n_val = int(etas[r])
            if not degree_is_permissible(d, n_val, strict=False):
                witnesses.append({"row": r, "degree": d, "eta_self_conj": n_val})
            if not degree_is_permissible(d, n_val, strict=True):
                strict_fail.append(r)
        details = {
            "rows": t.num_rows,
            "eta_histogram": _hist(int(x) for x in etas),
            "strict_bound_failures": len(strict_fail),
            "strict_bound_failing_rows": strict_fail[:32],
        }
        return ("fail" if witnesses else "pass"), witnesses[:32], details

    return _timed("theorem-b", g.name, run)


def verify_lemma_5_1(g: FiniteGroup, table: CharacterTable | None = None, seed: int = 0) -> VerificationReport:
    """In a p-group, a row with m = eta(theta, conj(theta)) > 1 has
    p < 2m+1 and degree p^t with 1 <= t <= m-2."""

    def run():
        p = _require_p_group(g)
        if p is None:
            return "skipped", [], {"reason": "not a p-group of order > 1"}
        t = table if table is not None else character_table(g, seed=seed)
        etas = self_conjugate_etas(t)
        witnesses = []
        checked = 0
        for r in range(t.num_rows):
            m = int(etas[r])
            if m <= 1:
                continue
            checked += 1
            d = int(t.degrees[r])
            tpow = 0
            dd = d
            while dd % p == 0:
                dd //= p
                tpow += 1
            ok = (p < 2 * m + 1) and dd == 1 and 1 <= tpow <= m - 2
            if not ok:
                witnesses.append({"row": r, "degree": d, "m": m, "p": p})
        details = {"p": p, "rows_with_m_gt_1": checked, "eta_histogram": _hist(int(x) for x in etas)}
        return ("fail" if witnesses else "pass"), witnesses[:32], details

    return _timed("lemma-5-1", g.name, run)


def conjecture_scan(g: FiniteGroup, table: CharacterTable | None = None, seed: int = 0) -> EtaSurvey:
    """Survey of all faithful pairs for the open-gap scan (odd p)."""
    p = _require_p_group(g)
    if p is None or p == 2:
        raise ValueError("conjecture scan requires a p-group with odd p")
    t = table if table is not None else character_table(g, seed=seed)
    return faithful_pair_survey(t)


def verify_conjecture_scan(g: FiniteGroup, table: CharacterTable | None = None, seed: int = 0) -> VerificationReport:
    """Report-only scan: flags any pair with 2*eta - 1 > p and eta < p as a
    counterexample candidate; never fails."""

    def run():
        p = _require_p_group(g)
        if p is None:
            return "skipped", [], {"reason": "not a p-group of order > 1"}
        if p == 2:
            return "skipped", [], {"reason": "scan applies to odd p only"}
        survey = conjecture_scan(g, table=table, seed=seed)
        if len(survey.faithful) == 0:
            return "skipped", [], {"reason": "no faithful irreducible character (center not cyclic)"}
        flags = survey.conjecture_flags()
        details = {
            "p": p,
            "pair_count": int(survey.num_pairs),
            "flagged": len(flags),
            "eta_histogram": survey.eta_histogram(),
        }
        return "pass", flags, details

    return _timed("conjecture-scan", g.name, run)
