"""The wreath-like example family and its two independent verifications.

For an odd prime p and m >= 1: E is the exponent-p extraspecial group of
order p^(2m-1) (cyclic of order p when m = 1), A = E^p with C_p cyclically
translating coordinates, G = C_p x| A, and chi is induced from the
coordinate-0 character of A built from a nontrivial lambda in Irr(E) of
degree p^(m-1).  The product chi*chi is verified to have exactly (p+1)/2
distinct constituents two ways: from the full character table of G, and by
counting C-orbits of coordinate-pair characters of A, which needs only
Irr(E) and index arithmetic and therefore scales to large G.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .characters import (
    Character,
    CharacterTable,
    character_table,
    decompose,
    induce,
    inner_product,
    is_faithful,
    product,
    subgroup_view,
)
from .errors import ResourceLimitError, TableConsistencyError
from .groups import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    FunctionPowerGroup,
    center,
    conjugacy_classes,
    function_power_semidirect,
    heisenberg_extraspecial,
    subgroup,
    _is_prime,
)
from .verifiers import VerificationReport

__all__ = [
    "ExampleSpec",
    "IndexedLinearFamily",
    "build_example",
    "verify_example_via_table",
    "verify_example_via_orbits",
    "cross_check_methods",
]


@dataclass(frozen=True)
class ExampleSpec:
    p: int
    m: int

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")

    @property
    def base_order(self) -> int:
        return self.p ** (2 * self.m - 1)

    @property
    def function_group_order(self) -> int:
        return self.base_order**self.p

    @property
    def group_order(self) -> int:
        return self.p ** (self.p * (2 * self.m - 1) + 1)

    @property
    def expected_eta(self) -> int:
        return (self.p + 1) // 2

    @property
    def expected_degree(self) -> int:
        return self.p**self.m

    def descriptor(self) -> str:
        return f"example:{self.p},{self.m}"


def _select_base_row(te: CharacterTable, spec: ExampleSpec) -> int:
    """Deterministic choice of lambda: first nontrivial row of degree p^(m-1)."""
    want = spec.p ** (spec.m - 1)
    for r in range(te.num_rows):
        if int(te.degrees[r]) != want:
            continue
        red = te.row(r).reduced()
        if spec.m == 1 and (red[:, 1:] == 0).all() and (red[:, 0] == 1).all():
            continue  # trivial character
        return r
    raise TableConsistencyError("no nontrivial row of the required degree in Irr(E)")


def _base_table_and_row(spec: ExampleSpec, seed: int = 0) -> tuple[FiniteGroup, CharacterTable, int]:
    e_group = heisenberg_extraspecial(spec.p, spec.m)
    te = character_table(e_group, seed=seed)
    return e_group, te, _select_base_row(te, spec)


class IndexedLinearFamily:
    """The coordinate characters of A = E^p: lam_i(a) = lam(a(i)) and
    mu_i(a) = mu(a(i)), with the translation action permuting indices."""

    def __init__(self, group: FunctionPowerGroup, te: CharacterTable, lam_row: int, mu_row: int):
        self.group = group
        self.te = te
        self.lam_row = lam_row
        self.mu_row = mu_row
        base = subgroup(group, group.base_subgroup_members(), validate=False)
        self.base_view = subgroup_view(base, name="coordinate-power-subgroup")
        self._acd = conjugacy_classes(self.base_view)

    def _coordinate_character(self, row: int, i: int) -> Character:
        """Character a -> (row of Irr(E)) evaluated at a(i), as a character
        of the coordinate-power subgroup."""
        g = self.group
        reps_parent = self.base_view.to_parent(self._acd.reps)
        digit = (reps_parent // g._weights[i]) % g.e.order
        e_classes = self.te.conj.class_of[digit]
        mult = self.te.mult[row][e_classes]
        return Character(self.base_view, self._acd, self.te.conductor, mult)

    def lam(self, i: int) -> Character:
        return self._coordinate_character(self.lam_row, i % self.group.p)

    def mu(self, i: int) -> Character:
        return self._coordinate_character(self.mu_row, i % self.group.p)


def _find_mu_row(te: CharacterTable, lam_row: int, p: int, m: int) -> int:
    """mu with lam*lam = lam(1) * mu, determined inside Irr(E)."""
    lam = te.row(lam_row)
    dec = decompose(product(lam, lam), te)
    if dec.support_size != 1:
        raise TableConsistencyError("square of the chosen base character is not a multiple of one row")
    mu_row, mult = dec.pairs[0]
    if mult != lam.degree:
        raise TableConsistencyError("multiplicity in the base-square is not the base degree")
    if int(te.degrees[mu_row]) != p ** (m - 1):
        raise TableConsistencyError("derived second character has unexpected degree")
    return mu_row


def build_example(
    spec: ExampleSpec,
    seed: int = 0,
    cap: int = DEFAULT_ELEMENT_CAP,
    group: FiniteGroup | None = None,
) -> tuple[FiniteGroup, Character]:
    """Construct G and the induced character chi = (coordinate-0 lambda)^G;
    asserts chi is irreducible, faithful, of degree p^m.  An existing group
    instance (from the same construction) may be passed to reuse its caches."""
    if spec.group_order > cap:
        raise ResourceLimitError(
            f"group order {spec.group_order} exceeds element cap {cap}; use the orbit method"
        )
    if group is not None:
        if not isinstance(group, FunctionPowerGroup) or group.order != spec.group_order or group.p != spec.p:
            raise ValueError("provided group does not match the construction parameters")
        g = group
        e_group = group.e
        te = character_table(e_group, seed=seed)
        lam_row = _select_base_row(te, spec)
    else:
        e_group, te, lam_row = _base_table_and_row(spec, seed=seed)
        g = function_power_semidirect(e_group, spec.p, cap=cap)
    mu_row = _find_mu_row(te, lam_row, spec.p, spec.m)
    family = IndexedLinearFamily(g, te, lam_row, mu_row)
    chi = induce(family.lam(0), g)
    if chi.degree != spec.expected_degree:
        raise TableConsistencyError(f"induced degree {chi.degree} != p^m = {spec.expected_degree}")
    if inner_product(chi, chi) != 1:
        raise TableConsistencyError("induced character is not irreducible")
    if not is_faithful(chi):
        raise TableConsistencyError("induced character is not faithful")
    g._cache["example_family"] = family
    return g, chi


def verify_example_via_table(
    spec: ExampleSpec,
    table: CharacterTable | None = None,
    seed: int = 0,
    cap: int = DEFAULT_ELEMENT_CAP,
    max_table_order: int = 20_000,
    budget_s: float = 120.0,
) -> VerificationReport:
    """Full-table verification: eta(chi, chi) = (p+1)/2, chi does not vanish
    outside the center, and the center is cyclic of order p."""
    t0 = time.perf_counter()
    name = spec.descriptor()
    if spec.group_order > min(cap, max_table_order):
        return VerificationReport(
            statement="example",
            group=name,
            status="skipped",
            details={
                "reason": f"table method skipped at order {spec.group_order} "
                f"(cap {min(cap, max_table_order)}, budget {budget_s}s); use the orbit method",
            },
        )
    g, chi = build_example(spec, seed=seed, cap=cap, group=table.group if table is not None else None)
    t = table if table is not None else character_table(g, seed=seed)
    witnesses = []
    chi_row = t.row_index_of(chi)
    dec = decompose(product(chi, chi), t)
    n_distinct = dec.support_size
    if n_distinct != spec.expected_eta:
        witnesses.append({"check": "eta", "got": n_distinct, "expected": spec.expected_eta})
    z = center(g)
    zero_mask = chi.zero_class_mask()
    smask = z.member_mask()
    outside_nonzero = False
    for c in range(t.conj.num_classes):
        if not zero_mask[c] and not smask[t.conj.member_lists[c]].all():
            outside_nonzero = True
            break
    if not outside_nonzero:
        witnesses.append({"check": "non-vanishing outside center", "got": "vanishes"})
    orders = g.element_orders()
    z_cyclic = any(int(orders[x]) == z.order for x in z.members)
    if not (z.order == spec.p and z_cyclic):
        witnesses.append({"check": "center cyclic of order p", "order": z.order})
    details = {
        "p": spec.p,
        "m": spec.m,
        "group_order": g.order,
        "chi_row": chi_row,
        "chi_degree": chi.degree,
        "eta": n_distinct,
        "constituents": [[int(t.degrees[r]), int(mlt)] for r, mlt in dec.pairs],
        "index_of_center_is_square": _is_square(g.order // z.order),
    }
    return VerificationReport(
        statement="example",
        group=name,
        status="fail" if witnesses else "pass",
        witnesses=witnesses,
        details=details,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _is_square(n: int) -> bool:
    r = math.isqrt(n)
    return r * r == n


def verify_example_via_orbits(spec: ExampleSpec, seed: int = 0, action_check_cap: int = 1000) -> VerificationReport:
    """Orbit-counting verification that needs only Irr(E) and index
    arithmetic: the constituents of (chi*chi) restricted to A are the
    coordinate-pair characters lam_i*lam_j plus the mu_i, the translation
    action partitions them into (p-1)/2 + 1 orbits with stabilizer A, and
    each orbit induces a distinct irreducible of G."""
    t0 = time.perf_counter()
    p, m = spec.p, spec.m
    name = spec.descriptor()
    witnesses = []

    e_group, te, lam_row = _base_table_and_row(spec, seed=seed)
    mu_row = _find_mu_row(te, lam_row, p, m)
    lam_deg = int(te.degrees[lam_row])
    mu_deg = int(te.degrees[mu_row])

    # (i) formal restriction of chi*chi to A: all coordinate pairs (i, j);
    # off-diagonal pairs are irreducible, diagonal ones contribute lam(1)*mu_i.
    off_diag = {frozenset((i, j)) for i in range(p) for j in range(p) if i != j}
    diag_constituents = {("mu", i) for i in range(p)}

    # (ii) translation orbits: c sends {i, j} to {i-c, j-c} and mu_i to mu_{i-c}
    def shift_pair(pair, c):
        i, j = tuple(pair)
        return frozenset(((i - c) % p, (j - c) % p))

    orbits = []
    seen = set()
    for pair in sorted(off_diag, key=sorted):
        if pair in seen:
            continue
        orbit = {shift_pair(pair, c) for c in range(p)}
        seen |= orbit
        orbits.append(orbit)
    mu_orbit = diag_constituents  # single orbit of the p diagonal constituents
    orbit_count = len(orbits) + 1

    # representatives lam_0 * lam_d with d in 1..(p-1)/2; distinctness per the
    # i+j = 0 (mod p) obstruction
    s_set = list(range(1, (p - 1) // 2 + 1))
    reps = {frozenset((0, d)) for d in s_set}
    rep_hits = {next(iter(o & reps), None) for o in orbits}
    if None in rep_hits or len(rep_hits) != len(orbits):
        witnesses.append({"check": "orbit representatives", "got": sorted(map(sorted, rep_hits - {None}))})
    for i in s_set:
        for j in s_set:
            if i < j and (i + j) % p == 0:
                witnesses.append({"check": "distinct representatives", "pair": [i, j]})
    # every off-diagonal pair is conjugate to a representative; diagonal pairs
    # all translate to coordinate 0
    for pair in off_diag:
        if not any(pair in o for o in orbits):
            witnesses.append({"check": "orbit coverage", "pair": sorted(pair)})

    # (iii) trivial translation stabilizers (so the full stabilizer is A and
    # each orbit induces irreducibly), then the count
    for d in s_set:
        stab = [c for c in range(p) if shift_pair(frozenset((0, d)), c) == frozenset((0, d))]
        if stab != [0]:
            witnesses.append({"check": "stabilizer", "d": d, "stabilizer": stab})
    if mu_deg == 0 or lam_deg != p ** (m - 1) or mu_deg != p ** (m - 1):
        witnesses.append({"check": "base degrees", "lam": lam_deg, "mu": mu_deg})
    if orbit_count != spec.expected_eta:
        witnesses.append({"check": "orbit count", "got": orbit_count, "expected": spec.expected_eta})

    # predicted decomposition of chi*chi over Irr(G)
    predicted = sorted([[p * lam_deg * lam_deg, 2]] * len(s_set) + [[p * mu_deg, lam_deg]])
    total = sum(deg * mult for deg, mult in predicted)
    if total != spec.expected_degree**2:
        witnesses.append({"check": "degree bookkeeping", "sum": total, "expected": spec.expected_degree**2})

    # index action versus real conjugation, checked on the translation
    # generator whenever the group fits under the cap
    action_checked = False
    if spec.group_order <= action_check_cap:
        g = function_power_semidirect(e_group, p, cap=action_check_cap)
        family = IndexedLinearFamily(g, te, lam_row, mu_row)
        cgen = g.a_size  # the translation generator (c = 1)
        view = family.base_view
        acd = family._acd
        reps_parent = view.to_parent(acd.reps)
        conj_parent = g.mul_vec(g.mul_vec(cgen, reps_parent), g.inv(cgen))
        perm = acd.class_of[view.from_parent(conj_parent)]
        for i in range(p):
            lam_i = family.lam(i)
            lam_shift = family.lam((i - 1) % p)
            if not np.array_equal(lam_i.reduced()[perm], lam_shift.reduced()):
                witnesses.append({"check": "index action", "i": i})
        action_checked = True

    details = {
        "p": p,
        "m": m,
        "orbit_count": orbit_count,
        "expected_eta": spec.expected_eta,
        "predicted_constituents": predicted,
        "chi_degree": spec.expected_degree,
        "group_order": spec.group_order,
        "action_checked_in_group": action_checked,
    }
    return VerificationReport(
        statement="example",
        group=name,
        status="fail" if witnesses else "pass",
        witnesses=witnesses[:32],
        details=details,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def cross_check_methods(
    spec: ExampleSpec,
    table: CharacterTable | None = None,
    seed: int = 0,
    cap: int = DEFAULT_ELEMENT_CAP,
    max_table_order: int = 20_000,
) -> VerificationReport:
    """Assert the table and orbit methods agree on eta and on the multiset of
    constituent degrees with multiplicities."""
    t0 = time.perf_counter()
    name = spec.descriptor()
    tab = verify_example_via_table(spec, table=table, seed=seed, cap=cap, max_table_order=max_table_order)
    if tab.status == "skipped":
        return VerificationReport(
            statement="example-cross-check",
            group=name,
            status="skipped",
            details={"reason": tab.details.get("reason", "table method unavailable")},
        )
    orb = verify_example_via_orbits(spec, seed=seed)
    witnesses = []
    if tab.status != "pass" or orb.status != "pass":
        witnesses.append({"check": "method status", "table": tab.status, "orbit": orb.status})
    if tab.details.get("eta") != orb.details.get("orbit_count"):
        witnesses.append(
            {"check": "eta agreement", "table": tab.details.get("eta"), "orbit": orb.details.get("orbit_count")}
        )
    got = sorted(tab.details.get("constituents", []))
    predicted = sorted(orb.details.get("predicted_constituents", []))
    if got != predicted:
        witnesses.append({"check": "constituent multiset", "table": got, "orbit": predicted})
    status = "fail" if witnesses else "pass"
    return VerificationReport(
        statement="example-cross-check",
        group=name,
        status=status,
        witnesses=witnesses,
        details={"eta": tab.details.get("eta"), "constituents": got},
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )
