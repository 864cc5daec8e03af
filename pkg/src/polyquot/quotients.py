"""Semisparse subgroups, quotient polytopes and classification reports.

Ground truth for semisparseness is the direct definition: quotient the face
poset by the subgroup's orbits, test the polytopality axioms, and require the
quotient's maximal chains to biject with the subgroup's flag orbits.  The
candidate search is a subgroup-lattice search restricted to the elements that
avoid every conjugate of s_i and of s_i s_j (|i-j| >= 2) - both conditions
are necessary for a semisparse subgroup and elementwise, so the restriction
loses nothing.  The product-set criterion (valid when the vertex figure has
no proper quotients) is implemented as a fast path and cross-checked against
the ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import catalog
from .permgroups import (MarkedGroup, Subgroup, SubgroupClass,
                         enumerate_subgroups_within)
from .polytopes import (FacePoset, FlagGraph, Polytope, is_polytopal,
                        is_regular, polytope_from_group, section,
                        section_profile)


# ---------------------------------------------------------------------------
# quotient construction


def _flag_orbits(g: MarkedGroup, n_ids: np.ndarray) -> np.ndarray:
    """lab[w] = least element id in the left orbit N*w."""
    M = g.rmul[:, n_ids.astype(np.int64)]  # M[w, k] = n_k * w
    return M.min(axis=1).astype(np.int64)


def _double_coset_labels(p: Polytope, orbit_lab: np.ndarray, rank: int) -> np.ndarray:
    """Join of the flag-orbit partition and the rank-i face partition."""
    face = p.face_of_flag[:, rank]
    n = p.n_flags
    q = orbit_lab.copy()
    while True:
        fm = np.full(p.counts[rank], n, dtype=np.int64)
        np.minimum.at(fm, face, q)
        q2 = np.minimum(q, fm[face])
        om = np.full(n, n, dtype=np.int64)
        np.minimum.at(om, orbit_lab, q2)
        q2 = np.minimum(q2, om[orbit_lab])
        if np.array_equal(q2, q):
            return q
        q = q2


@dataclass
class QuotientCandidate:
    poset: FacePoset
    face_of_flag: np.ndarray   # per original flag: quotient face index per rank
    orbit_lab: np.ndarray      # per original flag: least flag of its orbit
    orbit_reps: np.ndarray     # one flag per orbit

    @property
    def n_orbits(self) -> int:
        return len(self.orbit_reps)


def quotient_candidate(p: Polytope, g: MarkedGroup, n_ids: np.ndarray) -> QuotientCandidate:
    """Faces of the candidate quotient are subgroup orbits of faces; incidence
    holds when orbits share a flag (double cosets intersect)."""
    orbit_lab = _flag_orbits(g, n_ids)
    orbit_reps = np.unique(orbit_lab)
    counts = []
    faceq = np.empty((p.n_flags, p.rank), dtype=np.int64)
    for i in range(p.rank):
        labels = _double_coset_labels(p, orbit_lab, i)
        uniq, inverse = np.unique(labels, return_inverse=True)
        faceq[:, i] = inverse
        counts.append(len(uniq))
    mats = []
    for i in range(p.rank - 1):
        m = np.zeros((counts[i], counts[i + 1]), dtype=bool)
        m[faceq[:, i], faceq[:, i + 1]] = True
        mats.append(m)
    return QuotientCandidate(FacePoset(counts, mats), faceq, orbit_lab, orbit_reps)


def _maximal_chain_count(poset: FacePoset) -> int:
    c = np.ones(poset.counts[0], dtype=np.int64)
    for m in poset.mats:
        c = m.astype(np.int64).T @ c
    return int(c.sum())


def semisparse_diagnostic(g: MarkedGroup, n: Subgroup, p: Polytope | None = None) -> str | None:
    """None if semisparse; otherwise the first failed requirement."""
    if p is None:
        p = polytope_from_group(g)
    cand = quotient_candidate(p, g, n.elem_ids)
    ok, why = is_polytopal(cand.poset)
    if not ok:
        return why
    chains = cand.face_of_flag[cand.orbit_reps]
    if len(np.unique(chains, axis=0)) != cand.n_orbits:
        return "flags: distinct orbits induce the same maximal chain"
    if _maximal_chain_count(cand.poset) != cand.n_orbits:
        return "flags: quotient has maximal chains not induced by any orbit"
    return None


def is_semisparse(g: MarkedGroup, n: Subgroup, p: Polytope | None = None) -> bool:
    return semisparse_diagnostic(g, n, p) is None


def quotient_polytope(p: Polytope, g: MarkedGroup, n: Subgroup) -> Polytope:
    """Quotient of p by a semisparse subgroup; flags are the orbits.

    Rejects non-semisparse subgroups, naming the failed axiom.
    """
    why = semisparse_diagnostic(g, n, p)
    if why is not None:
        raise ValueError(f"subgroup of order {n.order} is not semisparse: {why}")
    orbit_lab = _flag_orbits(g, n.elem_ids)
    reps = np.unique(orbit_lab)
    oidx = np.searchsorted(reps, orbit_lab)
    adj = []
    for a in (g.right_action(gid) for gid in g.gen_ids):
        adj.append(oidx[orbit_lab[np.asarray(a)[reps]]].astype(np.int32))
    fg = FlagGraph(adj)
    fg.validate()
    return Polytope(fg)


# ---------------------------------------------------------------------------
# semisparse subgroup search


def semisparse_allowed_mask(g: MarkedGroup) -> np.ndarray:
    """Elements avoiding all conjugates of s_i and of s_i s_j (|i-j| >= 2).

    A subgroup containing a conjugate of some s_i gives an adjacency with a
    fixed orbit; one containing a conjugate of s_i s_j collapses a flag-level
    diamond.  Both are element conditions, so the mask is downward closed.
    """
    n = g.order
    R = g.rmul
    inv = g.inv_ids
    gids = g.gen_ids
    targets = [int(t) for t in gids]
    for i in range(g.rank):
        for j in range(i + 2, g.rank):
            targets.append(int(g.mul(gids[i], gids[j])))
    bad = np.zeros(n, dtype=bool)
    xs = np.arange(n)
    for t in targets:
        conj = R[xs, R[t][inv[xs].astype(np.int64)]]
        bad[np.unique(conj)] = True
    ok = ~bad
    ok[0] = True
    return ok


def semisparse_classes(g: MarkedGroup, order_bound: int = 10**4,
                       p: Polytope | None = None) -> list[SubgroupClass]:
    """One representative per conjugacy class of semisparse subgroups."""
    if p is None:
        p = polytope_from_group(g)
    allowed = semisparse_allowed_mask(g)
    candidates = enumerate_subgroups_within(g, allowed, order_bound)
    return [c for c in candidates if is_semisparse(g, c.rep, p)]


# ---------------------------------------------------------------------------
# fast path: the product-set criterion


def _facet_marked_group(w: MarkedGroup) -> MarkedGroup:
    return MarkedGroup(w.degree, [w.gens[0], w.gens[1], w.gens[2]])


def _semisparse_subgroup_sets(w: MarkedGroup, sub: MarkedGroup) -> set[frozenset[int]]:
    """All semisparse subgroups of `sub` (each subgroup, not just class reps),
    as frozensets of parent element ids."""
    psub = polytope_from_group(sub)
    out = set()
    for cls in semisparse_classes(sub, p=psub):
        from .permgroups import conjugates
        for conj in conjugates(sub, cls.rep):
            ids = frozenset(int(w.element_id(sub.perm_of(i))) for i in conj.elem_ids)
            out.add(ids)
    return out


def is_semisparse_product_criterion(w: MarkedGroup, n: Subgroup) -> bool:
    """Fast-path criterion, valid when the vertex figure has no proper
    quotients: every conjugate of n meets <s0,s1,s2><s1,s2,s3> in a semisparse
    subgroup of <s0,s1,s2>."""
    if w.rank != 4:
        raise ValueError("product-set criterion applies to rank-4 groups")
    a = w.parabolic([0, 1, 2])
    b = w.parabolic([1, 2, 3])
    prodset = np.unique(w.rmul[np.ix_(b.elem_ids.astype(np.int64), a.elem_ids.astype(np.int64))])
    wa = _facet_marked_group(w)
    good = _semisparse_subgroup_sets(w, wa)
    from .permgroups import conjugates
    for conj in conjugates(w, n):
        meet = frozenset(int(x) for x in np.intersect1d(conj.elem_ids, prodset))
        if meet not in good:
            return False
    return True


# ---------------------------------------------------------------------------
# classification reports


@dataclass
class QuotientRecord:
    subgroup: Subgroup
    class_size: int
    polytope: Polytope
    is_normal: bool
    is_regular: bool
    is_section_regular: bool
    facet_classes: dict[str, int]
    vfig_classes: dict[str, int]
    type_symbol: tuple[int, ...]

    @property
    def subgroup_order(self) -> int:
        return self.subgroup.order

    def to_json(self) -> dict:
        return {
            "subgroup_order": self.subgroup_order,
            "class_size": self.class_size,
            "normal": self.is_normal,
            "regular": self.is_regular,
            "section_regular": self.is_section_regular,
            "type": list(self.type_symbol),
            "facet_classes": dict(sorted(self.facet_classes.items())),
            "vfig_classes": dict(sorted(self.vfig_classes.items())),
            "face_counts": list(self.polytope.counts),
        }


@dataclass
class ClassificationReport:
    universal: str
    group_order: int
    records: list[QuotientRecord]

    @property
    def total_quotients(self) -> int:
        return len(self.records)

    @property
    def regular_count(self) -> int:
        return sum(1 for r in self.records if r.is_regular)

    @property
    def section_regular_count(self) -> int:
        return sum(1 for r in self.records if r.is_section_regular)

    @property
    def mixed_facet_count(self) -> int:
        return sum(1 for r in self.records if len(r.facet_classes) > 1)

    def to_json(self) -> dict:
        return {
            "universal": self.universal,
            "group_order": self.group_order,
            "total_quotients": self.total_quotients,
            "regular": self.regular_count,
            "section_regular": self.section_regular_count,
            "mixed_facets": self.mixed_facet_count,
            "quotients": [r.to_json() for r in self.records],
        }


def _rank3_section_classes(p: Polytope, which: str) -> dict[str, int]:
    """Catalog names of facet sections ('facets') or vertex-figure sections
    ('vfigs'), as a name -> count multiset."""
    out: dict[str, int] = {}
    if which == "facets":
        faces = range(p.counts[p.rank - 1])
        for f in faces:
            s = section(p, (p.rank - 1, f), None)
            name = catalog.identify(s)
            out[name] = out.get(name, 0) + 1
    else:
        for v in range(p.counts[0]):
            s = section(p, None, (0, v))
            name = catalog.identify(s)
            out[name] = out.get(name, 0) + 1
    return out


def classify_quotients(g: MarkedGroup, universal_name: str,
                       order_bound: int = 10**4) -> ClassificationReport:
    """Classify every quotient of the regular polytope with group g."""
    p = polytope_from_group(g)
    records = []
    for cls in semisparse_classes(g, order_bound, p):
        qp = quotient_polytope(p, g, cls.rep)
        normal = cls.rep.is_normal()
        regular = is_regular(qp)
        if regular != normal:
            raise AssertionError(
                f"regularity/normality mismatch for subgroup of order {cls.rep.order}")
        prof = section_profile(qp)
        sect_reg = prof.is_section_regular()
        if regular and not sect_reg:
            raise AssertionError("regular quotient failed section regularity")
        records.append(QuotientRecord(
            subgroup=cls.rep,
            class_size=cls.size,
            polytope=qp,
            is_normal=normal,
            is_regular=regular,
            is_section_regular=sect_reg,
            facet_classes=_rank3_section_classes(qp, "facets"),
            vfig_classes=_rank3_section_classes(qp, "vfigs"),
            type_symbol=qp.schlafli_type(),
        ))
    records.sort(key=lambda r: (r.subgroup_order, tuple(r.subgroup.elem_ids)))
    return ClassificationReport(universal_name, g.order, records)


def quotient_lattice_dot(report: ClassificationReport, g: MarkedGroup) -> str:
    """DOT graph of the further-quotient relation between quotient classes.

    P/N2 is a further quotient of P/N1 when N1 is contained in a conjugate of
    N2; edges are the covering pairs of that partial order.
    """
    from .permgroups import conjugates

    recs = report.records
    k = len(recs)
    conj_sets: list[list[frozenset]] = []
    for r in recs:
        conj_sets.append([frozenset(int(x) for x in c.elem_ids)
                          for c in conjugates(g, r.subgroup)])
    le = np.zeros((k, k), dtype=bool)
    for i, r1 in enumerate(recs):
        s1 = frozenset(int(x) for x in r1.subgroup.elem_ids)
        for j, r2 in enumerate(recs):
            le[i, j] = any(s1 <= c for c in conj_sets[j])
    lines = ["digraph quotients {", "  rankdir=BT;"]
    for i, r in enumerate(recs):
        label = f"N{i}: |N|={r.subgroup_order}" + (" regular" if r.is_regular else "")
        lines.append(f'  q{i} [label="{label}"];')
    for i in range(k):
        for j in range(k):
            if i != j and le[i, j]:
                # covering edge: no intermediate class
                if not any(m != i and m != j and le[i, m] and le[m, j] for m in range(k)):
                    lines.append(f"  q{i} -> q{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# aggregate summary across the classification


@dataclass
class CaseContribution:
    case: int
    source: str  # "computed" or "paper"
    total: int
    regular: int
    section_regular: int


# the two large cases, quoted from the published classification, never computed
PAPER_QUOTED = {
    20: CaseContribution(20, "paper", 145, 3, 70),
    22: CaseContribution(22, "paper", 145, 3, 70),
}

# quotients shared between universals get counted once per containing case:
# the self-dual universal of case 21 is also a quotient in cases 20 and 22,
# and the self-dual universal of case 11 is also a quotient in cases 10 and 12
SHARED_QUOTIENTS = [
    ("case-21 universal", (20, 21, 22)),
    ("case-11 universal", (10, 11, 12)),
]

# degenerate universal polytopes that are not quotients of any nondegenerate
# one (the other four degenerate universals coincide with quotients above)
DEGENERATE_EXTRAS = [
    "{{2,4},{4,3}_3}",
    "{{2,5},{5,3}_5}",
    "dual of {{2,4},{4,3}_3}",
    "dual of {{2,5},{5,3}_5}",
]


@dataclass
class AggregateSummary:
    contributions: list[CaseContribution]
    shared: list[tuple[str, tuple[int, ...], int]]  # (name, cases, overcount)
    total_with_multiplicity: int
    regular_with_multiplicity: int
    section_regular_with_multiplicity: int
    total: int
    regular: int
    section_regular: int
    degenerate_extras: list[str]
    abstract_total: int
    unverified_cases: list[int]

    def to_json(self) -> dict:
        return {
            "contributions": [
                {"case": c.case, "source": c.source, "total": c.total,
                 "regular": c.regular, "section_regular": c.section_regular}
                for c in self.contributions
            ],
            "shared_quotients": [
                {"polytope": name, "cases": list(cases), "overcount": over}
                for name, cases, over in self.shared
            ],
            "totals": {"quotients": self.total, "regular": self.regular,
                       "section_regular": self.section_regular},
            "degenerate_extras": self.degenerate_extras,
            "abstract_total": self.abstract_total,
            "unverified_cases": self.unverified_cases,
        }


def aggregate_summary(contributions: list[CaseContribution]) -> AggregateSummary:
    """Combine per-case quotient counts into the classification totals.

    Shared quotients are deduplicated; paper-quoted contributions stay marked
    unverified.  The abstract's grand total adds the four degenerate
    universals that are not quotients of any nondegenerate universal.
    """
    present = {c.case for c in contributions}
    tm = sum(c.total for c in contributions)
    rm = sum(c.regular for c in contributions)
    sm = sum(c.section_regular for c in contributions)
    shared = []
    over_total = 0
    for name, cases in SHARED_QUOTIENTS:
        k = len([c for c in cases if c in present])
        if k > 1:
            shared.append((name, cases, k - 1))
            over_total += k - 1
    summary = AggregateSummary(
        contributions=sorted(contributions, key=lambda c: c.case),
        shared=shared,
        total_with_multiplicity=tm,
        regular_with_multiplicity=rm,
        section_regular_with_multiplicity=sm,
        total=tm - over_total,
        regular=rm - over_total,
        section_regular=sm - over_total,
        degenerate_extras=list(DEGENERATE_EXTRAS) if contributions else [],
        abstract_total=(tm - over_total + len(DEGENERATE_EXTRAS)) if contributions else 0,
        unverified_cases=sorted(c.case for c in contributions if c.source == "paper"),
    )
    return summary


def contribution_from_report(case: int, report: ClassificationReport) -> CaseContribution:
    return CaseContribution(case, "computed", report.total_quotients,
                            report.regular_count, report.section_regular_count)
