"""Flags, face posets, polytopality, sections, duality and isomorphism.

A FlagGraph carries the combinatorics of a polytope as rank-indexed adjacency
involutions on flags.  Faces are recovered as orbits of flags under the
adjacencies omitting one rank; the face poset (with virtual least and greatest
faces) is what the polytopality axioms are checked against.  Isomorphism is
decided by a canonical certificate: the lexicographically least BFS relabelling
of the flag adjacencies over all start flags.  An automorphism of a connected
flag graph is fixed by the image of one flag, so the same sweep yields the
automorphism group order and hence flag-transitivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .permgroups import MarkedGroup


# ---------------------------------------------------------------------------
# flag graphs


@dataclass
class FlagGraph:
    adj: list[np.ndarray]  # adj[i] = i-adjacency involution on flags

    @property
    def rank(self) -> int:
        return len(self.adj)

    @property
    def n_flags(self) -> int:
        return len(self.adj[0]) if self.adj else 1

    def validate(self):
        n = self.n_flags
        idx = np.arange(n)
        for i, a in enumerate(self.adj):
            if not np.array_equal(a[a], idx):
                raise ValueError(f"{i}-adjacency is not an involution")
            if (a == idx).any():
                raise ValueError(f"{i}-adjacency has fixed points")
        for i in range(self.rank):
            for j in range(i + 2, self.rank):
                if not np.array_equal(self.adj[i][self.adj[j]], self.adj[j][self.adj[i]]):
                    raise ValueError(f"{i}- and {j}-adjacencies do not commute")
        if self.rank and not _connected(self.adj, n):
            raise ValueError("flag graph is not connected")


def _connected(adj, n) -> bool:
    lab = _orbit_label_array(adj, n)
    return bool((lab == lab[0]).all())


def _orbit_label_array(adj, n) -> np.ndarray:
    """Min-label propagation: lab[x] = least flag reachable from x."""
    lab = np.arange(n)
    changed = True
    while changed:
        changed = False
        for a in adj:
            nl = np.minimum(lab, lab[a])
            nl = np.minimum(nl, nl[a])
            if not np.array_equal(nl, lab):
                lab = nl
                changed = True
    return lab


def _orbit_labels(adj, n) -> np.ndarray:
    return np.unique(_orbit_label_array(adj, n))


def string_condition(g: MarkedGroup) -> bool:
    """Generators pairwise commute at distance >= 2 in the string diagram."""
    for i in range(g.rank):
        for j in range(i + 2, g.rank):
            p = g.gens[i][g.gens[j]]
            if not np.array_equal(p, g.gens[j][g.gens[i]]):
                return False
    return True


def intersection_condition(g: MarkedGroup) -> bool:
    """<s_i : i in I> ∩ <s_j : j in J> = <s_k : k in I∩J> for all I, J."""
    from itertools import combinations, chain

    subsets = list(chain.from_iterable(
        combinations(range(g.rank), r) for r in range(g.rank + 1)))
    para = {s: frozenset(int(e) for e in g.parabolic(s).elem_ids) for s in subsets}
    for a in subsets:
        for b in subsets:
            meet = tuple(sorted(set(a) & set(b)))
            if len(para[a] & para[b]) != len(para[meet]):
                return False
    return True


def flag_graph_from_group(g: MarkedGroup) -> FlagGraph:
    """Coset-geometry flag graph: flags are group elements, i-adjacency is
    right multiplication by s_i."""
    if not string_condition(g):
        raise ValueError("commuting relator check fails: not a string group")
    if not intersection_condition(g):
        raise ValueError("intersection condition fails: not a polytope group")
    g._build_tables()
    adj = [g.right_action(gid).astype(np.int32) for gid in g.gen_ids]
    fg = FlagGraph(adj)
    fg.validate()
    return fg


# ---------------------------------------------------------------------------
# face posets


@dataclass
class FacePoset:
    """Ranked candidate poset: faces per rank plus consecutive-rank incidences.

    The least and greatest faces are implicit.  `mats[i]` is the boolean
    incidence matrix between rank-i and rank-(i+1) faces.
    """

    counts: list[int]
    mats: list[np.ndarray]

    @property
    def rank(self) -> int:
        return len(self.counts)

    @classmethod
    def from_incidences(cls, counts, pairs_per_level) -> "FacePoset":
        mats = []
        for i, pairs in enumerate(pairs_per_level):
            m = np.zeros((counts[i], counts[i + 1]), dtype=bool)
            for a, b in pairs:
                m[a, b] = True
            mats.append(m)
        return cls(list(counts), mats)


class Polytope:
    """Polytope backed by a flag graph with derived faces.

    face_of_flag[w, i] is the rank-i face through flag w; faces are numbered
    by least member flag, so the numbering is deterministic.
    """

    def __init__(self, fg: FlagGraph):
        self.fg = fg
        n, k = fg.n_flags, fg.rank
        self.face_of_flag = np.empty((n, k), dtype=np.int64)
        self.counts = []
        for i in range(k):
            others = [a for j, a in enumerate(fg.adj) if j != i]
            lab = _orbit_label_array(others, n)
            uniq, inverse = np.unique(lab, return_inverse=True)
            self.face_of_flag[:, i] = inverse
            self.counts.append(len(uniq))
        self.mats = []
        for i in range(k - 1):
            m = np.zeros((self.counts[i], self.counts[i + 1]), dtype=bool)
            m[self.face_of_flag[:, i], self.face_of_flag[:, i + 1]] = True
            self.mats.append(m)
        self._cert = None
        self._aut = None
        self._transitive = None

    @property
    def rank(self) -> int:
        return self.fg.rank

    @property
    def n_flags(self) -> int:
        return self.fg.n_flags

    def poset(self) -> FacePoset:
        return FacePoset(list(self.counts), list(self.mats))

    # -- certificates -----------------------------------------------------

    def _scan_certs(self):
        if self._cert is None:
            self._cert, self._aut = _canonical_certificate(self.fg)
        return self._cert, self._aut

    @property
    def certificate(self) -> bytes:
        return self._scan_certs()[0]

    @property
    def aut_order(self) -> int:
        return self._scan_certs()[1]

    def schlafli_type(self) -> tuple[int, ...]:
        """Orders of the products r_{i-1} r_i on flags (the polygon orders)."""
        out = []
        for i in range(1, self.rank):
            p = self.fg.adj[i][self.fg.adj[i - 1]]
            out.append(_perm_order(p))
        return tuple(out)


def _perm_order(p) -> int:
    n = len(p)
    seen = np.zeros(n, dtype=bool)
    o = 1
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        o = o * length // gcd(o, length)
    return o


def faces_from_flags(fg: FlagGraph) -> Polytope:
    return Polytope(fg)


def polytope_from_group(g: MarkedGroup) -> Polytope:
    return Polytope(flag_graph_from_group(g))


# ---------------------------------------------------------------------------
# polytopality axioms


def _chain_mats(poset: FacePoset) -> list[np.ndarray]:
    """Incidence matrices extended by the virtual least and greatest faces."""
    lo = np.ones((1, poset.counts[0]), dtype=bool) if poset.rank else None
    hi = np.ones((poset.counts[-1], 1), dtype=bool) if poset.rank else None
    if poset.rank == 0:
        return [np.ones((1, 1), dtype=bool)]
    return [lo] + list(poset.mats) + [hi]


def is_polytopal(poset: FacePoset) -> tuple[bool, str | None]:
    """Check bounded / ranked / diamond / strong connectivity, in that order.

    Returns (True, None) or (False, name of the first failed axiom).
    """
    # bounded: the representation always carries a least and a greatest face,
    # but empty ranks make them non-unique joins (no faces at all in between)
    for i, c in enumerate(poset.counts):
        if c == 0:
            return False, f"bounded: no faces of rank {i}"
    mats = _chain_mats(poset)
    # ranked: every face lies on a maximal chain through every rank
    for i, m in enumerate(mats):
        if not m.any(axis=1).all():
            return False, f"ranked: rank-{i - 1} face with nothing above"
        if not m.any(axis=0).all():
            return False, f"ranked: rank-{i} face with nothing below"
    # diamond: every section of rank 1 has exactly two proper faces
    for i in range(len(mats) - 1):
        prod = mats[i].astype(np.int32) @ mats[i + 1].astype(np.int32)
        bad = prod[(prod != 0) & (prod != 2)]
        if bad.size:
            return False, f"diamond: a rank-1 section between ranks {i - 1} and {i + 1} has {int(bad[0])} faces"
    # strong connectivity: every section of rank >= 2 is connected
    if not _strongly_connected(poset, mats):
        return False, "connected: some section of rank >= 2 is disconnected"
    return True, None


def _strongly_connected(poset: FacePoset, mats) -> bool:
    n = poset.rank
    # reach[i][j]: boolean reachability between rank-i and rank-j faces (virtual
    # ranks included as index 0 and n+1)
    reach = {}
    for i in range(len(mats)):
        reach[(i, i + 1)] = mats[i]
        for j in range(i + 2, len(mats) + 1):
            reach[(i, j)] = (reach[(i, j - 1)].astype(np.int32) @ mats[j - 1].astype(np.int32)) > 0
    for i in range(len(mats) + 1):
        for j in range(i + 3, len(mats) + 1):
            lowers = 1 if i == 0 else poset.counts[i - 1]
            uppers = 1 if j == len(mats) else poset.counts[j - 1]
            for a in range(lowers):
                for b in range(uppers):
                    if i > 0 and j < len(mats) and not reach[(i, j)][a, b]:
                        continue
                    if not _section_connected(poset, mats, reach, i, j, a, b):
                        return False
    return True


def _section_connected(poset, mats, reach, i, j, a, b) -> bool:
    # faces of the open section between rank index i (face a) and j (face b)
    members = []
    for k in range(i + 1, j):
        sel = np.ones(poset.counts[k - 1], dtype=bool)
        if i > 0:
            sel &= reach[(i, k)][a]
        if j < len(mats):
            sel &= reach[(k, j)][:, b]
        members.append(np.flatnonzero(sel))
    total = sum(len(m) for m in members)
    if total == 0:
        return True
    # union-find over the section's faces along consecutive incidences
    offs = np.cumsum([0] + [len(m) for m in members])
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for k in range(len(members) - 1):
        lower, upper = members[k], members[k + 1]
        sub = mats[i + 1 + k][np.ix_(lower, upper)]
        for li, ui in zip(*np.nonzero(sub)):
            union(offs[k] + int(li), offs[k + 1] + int(ui))
    roots = {find(x) for x in range(total)}
    return len(roots) == 1


# ---------------------------------------------------------------------------
# canonical certificates


_SMALL_CERT = 400  # below this, plain lists beat numpy per-level overhead


def _bfs_labels(adj, start: int, n: int) -> np.ndarray:
    """Deterministic BFS labelling: children explored in rank order from each
    parent, parents in label order."""
    ln = np.full(n, -1, dtype=np.int64)
    ln[start] = 0
    frontier = np.array([start], dtype=np.int64)
    count = 1
    k = len(adj)
    while frontier.size:
        if k == 0:
            break
        cand = np.empty(frontier.size * k, dtype=np.int64)
        for i, a in enumerate(adj):
            cand[i::k] = a[frontier]
        cand = cand[ln[cand] < 0]
        if cand.size:
            uniq, first = np.unique(cand, return_index=True)
            order = np.argsort(first, kind="stable")
            new = uniq[order]
            ln[new] = count + np.arange(len(new))
            count += len(new)
            frontier = new
        else:
            frontier = np.empty(0, dtype=np.int64)
    return ln


def _certificate_from(adj, start: int, n: int) -> bytes:
    ln = _bfs_labels(adj, start, n)
    pos = np.argsort(ln)  # pos[new label] = flag
    rows = [ln[a[pos]] for a in adj]
    return np.concatenate(rows).astype(np.int64).tobytes() if rows else b""


def _certificate_from_lists(adj, start: int, n: int) -> bytes:
    """Same labelling as _certificate_from, for small graphs."""
    ln = [-1] * n
    ln[start] = 0
    order = [start]
    count = 1
    qi = 0
    while qi < len(order):
        f = order[qi]
        qi += 1
        for a in adj:
            g = a[f]
            if ln[g] < 0:
                ln[g] = count
                count += 1
                order.append(g)
    out = []
    for a in adj:
        for f in order:
            out.append(ln[a[f]])
    return np.asarray(out, dtype=np.int64).tobytes()


def _cert_scan(fg: FlagGraph):
    """Yield (start, certificate) for every start flag."""
    n = fg.n_flags
    if n <= _SMALL_CERT:
        adj = [a.tolist() for a in fg.adj]
        for start in range(n):
            yield start, _certificate_from_lists(adj, start, n)
    else:
        for start in range(n):
            yield start, _certificate_from(fg.adj, start, n)


def _cert_header(fg: FlagGraph) -> bytes:
    return repr((fg.rank, fg.n_flags)).encode()


def _canonical_certificate(fg: FlagGraph) -> tuple[bytes, int]:
    """(lex-least certificate over all start flags, automorphism group order)."""
    if fg.n_flags == 0 or fg.rank == 0:
        return _cert_header(fg), 1
    best = None
    base = None
    aut = 0
    for _, cert in _cert_scan(fg):
        if base is None:
            base = cert
        if cert == base:
            aut += 1
        if best is None or cert < best:
            best = cert
    return _cert_header(fg) + best, aut


def is_regular(p: Polytope) -> bool:
    """Flag-transitivity of the combinatorial automorphism group.

    Scans certificates with an early exit on the first orbit split; a
    completed scan also yields the canonical certificate for free.
    """
    if p._aut is not None:
        return p._aut == p.n_flags
    if p._transitive is None:
        if p.rank == 0:
            p._transitive = True
        else:
            base = None
            transitive = True
            for _, cert in _cert_scan(p.fg):
                if base is None:
                    base = cert
                elif cert != base:
                    transitive = False
                    break
            p._transitive = transitive
            if transitive:
                p._aut = p.n_flags
                p._cert = _cert_header(p.fg) + base
    return p._transitive


def are_isomorphic(p1: Polytope, p2: Polytope) -> bool:
    if p1.rank != p2.rank or p1.n_flags != p2.n_flags or p1.counts != p2.counts:
        return False
    return p1.certificate == p2.certificate


def dual(p: Polytope) -> Polytope:
    """Order-reversed polytope: adjacency ranks reversed."""
    return Polytope(FlagGraph([a.copy() for a in p.fg.adj[::-1]]))


# ---------------------------------------------------------------------------
# sections


def section(p: Polytope, upper: tuple[int, int] | None, lower: tuple[int, int] | None) -> Polytope:
    """Section F/G for faces given as (rank, index); None means the virtual
    greatest (for F) or least (for G) face."""
    n = p.n_flags
    jf, f_idx = upper if upper is not None else (p.rank, 0)
    ig, g_idx = lower if lower is not None else (-1, 0)
    if not (-1 <= ig < jf <= p.rank):
        raise ValueError("section requires lower rank < upper rank")
    mask = np.ones(n, dtype=bool)
    if jf < p.rank:
        mask &= p.face_of_flag[:, jf] == f_idx
    if ig >= 0:
        mask &= p.face_of_flag[:, ig] == g_idx
    flags = np.flatnonzero(mask)
    if flags.size == 0:
        raise ValueError("faces are not incident")
    ranks = list(range(ig + 1, jf))
    if not ranks:
        return Polytope(FlagGraph([]))
    rows = p.face_of_flag[np.ix_(flags, ranks)]
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    m = len(uniq)
    adj = []
    flag_class = np.full(n, -1, dtype=np.int64)
    flag_class[flags] = inverse
    for i in ranks:
        a = np.full(m, -1, dtype=np.int32)
        img = flag_class[p.fg.adj[i][flags]]
        a[inverse] = img
        adj.append(a)
    return Polytope(FlagGraph(adj))


@dataclass
class SectionProfile:
    """Multisets of section isomorphism classes per rank pair (i, j), j >= i+2.

    classes[(i, j)] maps a canonical certificate to the number of sections in
    that isomorphism class.  Rank-1 sections are diamonds by the time this is
    computed, so only pairs with j >= i+3 are materialized; pairs with
    j == i+2 are recorded as a single class.
    """

    classes: dict[tuple[int, int], dict[bytes, int]]

    def is_section_regular(self) -> bool:
        return all(len(v) <= 1 for v in self.classes.values())

    def summary(self) -> dict[str, list[int]]:
        return {f"({i},{j})": sorted(v.values(), reverse=True)
                for (i, j), v in sorted(self.classes.items())}


def section_profile(p: Polytope) -> SectionProfile:
    classes: dict[tuple[int, int], dict[bytes, int]] = {}
    diamond_cert = b"diamond"
    for i in range(-1, p.rank - 1):
        for j in range(i + 2, p.rank + 1):
            counter: dict[bytes, int] = {}
            classes[(i, j)] = counter
            if j == i + 2:
                # rank-1 sections are diamonds once the diamond axiom holds
                counter[diamond_cert] = _count_incident_pairs(p, i, j)
                continue
            if _count_incident_pairs(p, i, j) == 1:
                # a single section is a singleton class whatever it is
                counter[b"singleton"] = 1
                continue
            for up, lo in _incident_pairs(p, i, j):
                s = section(p, up, lo)
                c = s.certificate
                counter[c] = counter.get(c, 0) + 1
    return SectionProfile(classes)


def _pair_rows(p: Polytope, i: int, j: int) -> np.ndarray:
    cols = []
    if i >= 0:
        cols.append(p.face_of_flag[:, i])
    if j < p.rank:
        cols.append(p.face_of_flag[:, j])
    if not cols:
        return np.zeros((p.n_flags, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def _count_incident_pairs(p: Polytope, i: int, j: int) -> int:
    rows = _pair_rows(p, i, j)
    if rows.shape[1] == 0:
        return 1
    return len(np.unique(rows, axis=0))


def _incident_pairs(p: Polytope, i: int, j: int):
    rows = _pair_rows(p, i, j)
    if rows.shape[1] == 0:
        yield None, None
        return
    for row in np.unique(rows, axis=0):
        col = 0
        lo = None
        if i >= 0:
            lo = (i, int(row[col]))
            col += 1
        up = (j, int(row[col])) if j < p.rank else None
        yield up, lo


def is_section_regular(p: Polytope) -> bool:
    return section_profile(p).is_section_regular()


# ---------------------------------------------------------------------------
# exports


def polytope_json(p: Polytope) -> dict:
    prof = section_profile(p)
    return {
        "rank": p.rank,
        "flags": p.n_flags,
        "face_counts": list(p.counts),
        "schlafli_type": list(p.schlafli_type()),
        "regular": is_regular(p),
        "section_regular": prof.is_section_regular(),
        "section_profile": prof.summary(),
    }


def hasse_dot(p: Polytope, name: str = "polytope") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines.append('  least [label="rank -1", rank="-1"];')
    for i, c in enumerate(p.counts):
        for f in range(c):
            lines.append(f'  f{i}_{f} [label="r{i}#{f}", rank="{i}"];')
    lines.append(f'  greatest [label="rank {p.rank}", rank="{p.rank}"];')
    for f in range(p.counts[0]):
        lines.append(f"  least -> f0_{f};")
    for i, m in enumerate(p.mats):
        for a, b in zip(*np.nonzero(m)):
            lines.append(f"  f{i}_{a} -> f{i + 1}_{b};")
    for f in range(p.counts[-1]):
        lines.append(f"  f{p.rank - 1}_{f} -> greatest;")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_COLORS = ["red", "green", "blue", "orange", "purple", "brown", "cyan"]


def flag_graph_dot(fg: FlagGraph, name: str = "flags") -> str:
    lines = [f"graph {name} {{"]
    for i, a in enumerate(fg.adj):
        color = _DOT_COLORS[i % len(_DOT_COLORS)]
        for x in range(fg.n_flags):
            y = int(a[x])
            if x < y:
                lines.append(f'  {x} -- {y} [color={color}, label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
