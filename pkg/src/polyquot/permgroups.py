"""Marked permutation groups with dense multiplication tables.

A MarkedGroup is a concrete permutation group together with its ordered list
of distinguished involutory generators (the s_i of a string group).  Elements
are enumerated exhaustively (desk scale: orders up to ~10^4) and indexed in
lexicographic order of their image arrays, so element ids, subgroup
representatives and report orderings are reproducible across runs.  A dense
right-multiplication table makes products, conjugation, subgroup closure and
coset labelling single numpy gathers.

Subgroup-class enumeration uses cyclic extension (prime-index extensions
inside the normalizer) plus joins with odd-prime-power cyclic subgroups.
Cyclic extension alone reaches exactly the soluble subgroups; the odd joins
bridge to perfect subgroups (A_5 inside L_2(11), L_2(19), 2^6:A_5), since any
subgroup is generated by its Sylow subgroups and odd Sylows are generated by
odd-order cyclic subgroups of prime-power order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

DEFAULT_ORDER_LIMIT = 20000
DEFAULT_SUBGROUP_BOUND = 10000


class BoundExceeded(Exception):
    """A configured resource bound was hit: a reportable outcome, not a bug."""


# ---------------------------------------------------------------------------
# permutation helpers (permutations are integer image arrays; p maps i to p[i])

def identity_perm(degree: int) -> np.ndarray:
    return np.arange(degree, dtype=np.int32)


def as_perm(images, degree: int | None = None) -> np.ndarray:
    p = np.asarray(images, dtype=np.int32)
    if p.ndim != 1:
        raise ValueError("a permutation is a 1-d image array")
    if degree is not None and len(p) != degree:
        raise ValueError(f"expected degree {degree}, got {len(p)}")
    if not np.array_equal(np.sort(p), np.arange(len(p))):
        raise ValueError("image array is not a bijection")
    return p


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Product p*q: apply p first, then q."""
    return q[p]


def inverse_perm(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


def is_involution(p: np.ndarray) -> bool:
    return bool(np.array_equal(p[p], np.arange(len(p))))


def _row_key(row: np.ndarray) -> bytes:
    # big-endian unsigned bytes compare like the numeric image tuple
    return np.ascontiguousarray(row, dtype=">u4").tobytes()


def _ids_key(ids) -> bytes:
    return np.ascontiguousarray(ids, dtype=np.int32).tobytes()


def _primes_dividing(n: int) -> list[int]:
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


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for p in _primes_dividing(n):
        k = n
        while k % p == 0:
            k //= p
        return k == 1
    return False


# ---------------------------------------------------------------------------


class MarkedGroup:
    """Permutation group with ordered distinguished involutory generators."""

    def __init__(self, degree: int, gens, order_limit: int = DEFAULT_ORDER_LIMIT):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        self.gens = [as_perm(g, degree) for g in gens]
        for i, g in enumerate(self.gens):
            if not is_involution(g):
                raise ValueError(f"generator {i} does not square to the identity")
        self.order_limit = order_limit
        self._elements = None      # (order x degree) image arrays, lex sorted
        self._index = None         # row key -> element id
        self._rmul = None          # _rmul[j][i] = id of elem_i * elem_j
        self._inv = None
        self._elem_orders = None

    @property
    def rank(self) -> int:
        return len(self.gens)

    # -- element enumeration ------------------------------------------------

    def _enumerate(self):
        if self._elements is not None:
            return
        ident = identity_perm(self.degree)
        seen = {_row_key(ident)}
        elems = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.gens:
                    q = g[p]
                    key = _row_key(q)
                    if key not in seen:
                        if len(elems) >= self.order_limit:
                            raise BoundExceeded(
                                f"group order exceeds enumeration limit {self.order_limit}")
                        seen.add(key)
                        elems.append(q)
                        nxt.append(q)
            frontier = nxt
        mat = np.array(elems, dtype=np.int32)
        keys = [_row_key(r) for r in mat]
        order = sorted(range(len(elems)), key=keys.__getitem__)
        mat = mat[order]
        self._elements = mat
        self._index = {_row_key(r): i for i, r in enumerate(mat)}

    @property
    def order(self) -> int:
        self._enumerate()
        return len(self._elements)

    @property
    def elements(self) -> np.ndarray:
        self._enumerate()
        return self._elements

    def element_id(self, perm) -> int:
        """Id of a permutation, or -1 if it is not in the group."""
        p = as_perm(perm)
        if len(p) != self.degree:
            raise ValueError(f"permutation acts on {len(p)} points, group degree is {self.degree}")
        self._enumerate()
        return self._index.get(_row_key(p), -1)

    def perm_of(self, elem_id: int) -> np.ndarray:
        return self.elements[elem_id]

    @property
    def gen_ids(self) -> list[int]:
        return [self.element_id(g) for g in self.gens]

    # -- dense multiplication table ------------------------------------------

    def _build_tables(self):
        if self._rmul is not None:
            return
        self._enumerate()
        n = len(self._elements)
        dtype = np.int16 if n < 2**15 else np.int32
        R = np.full((n, n), -1, dtype=dtype)
        R[0] = np.arange(n, dtype=dtype)  # identity has id 0 (lex-least row)
        gids = self.gen_ids
        for g, gid in zip(self.gens, gids):
            rows = g[self._elements]  # row i = elem_i * g
            R[gid] = np.fromiter(
                (self._index[_row_key(r)] for r in rows), dtype=dtype, count=n)
        done = np.zeros(n, dtype=bool)
        done[0] = True
        for gid in gids:
            done[gid] = True
        queue = deque([0] + gids)
        while queue:
            j = queue.popleft()
            for gid in gids:
                j2 = int(R[gid][j])  # id of elem_j * gen
                if not done[j2]:
                    R[j2] = R[gid][R[j]]
                    done[j2] = True
                    queue.append(j2)
        if not done.all():
            raise AssertionError("multiplication table incomplete")
        self._rmul = R
        self._inv = np.argmin(R, axis=1).astype(dtype)

    @property
    def rmul(self) -> np.ndarray:
        """rmul[j][i] = id of elem_i * elem_j (right multiplication by j)."""
        self._build_tables()
        return self._rmul

    @property
    def inv_ids(self) -> np.ndarray:
        self._build_tables()
        return self._inv

    def right_action(self, elem_id: int) -> np.ndarray:
        """Permutation of element ids induced by right multiplication."""
        return self.rmul[elem_id]

    def mul(self, a, b):
        """Product of elements by id; either argument may be an id array."""
        return self.rmul[b, a]

    def inverse(self, a):
        return self.inv_ids[a]

    def conj(self, a, g):
        """g^-1 * a * g, by ids (a may be an array)."""
        return self.mul(self.mul(self.inverse(g), a), g)

    def power(self, a, k: int):
        """a^k by id; a may be an array."""
        a = np.asarray(a)
        res = np.zeros_like(a)
        base = a.copy()
        while k:
            if k & 1:
                res = self.mul(res, base)
            base = self.mul(base, base)
            k >>= 1
        return res

    @property
    def element_orders(self) -> np.ndarray:
        if self._elem_orders is None:
            self._build_tables()
            n = self.order
            orders = np.zeros(n, dtype=np.int32)
            orders[0] = 1
            cur = np.arange(n)
            k = 1
            while (orders == 0).any():
                k += 1
                cur = self.rmul[np.arange(n), cur]
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
            return orders
        return self._elem_orders

    # -- subgroups -------------------------------------------------------------

    def closure_ids(self, gen_ids) -> np.ndarray:
        """Sorted element ids of the subgroup generated by the given ids."""
        R = self.rmul
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        gen_ids = [int(g) for g in gen_ids]
        frontier = np.array([0], dtype=np.int64)
        while frontier.size:
            new = []
            for g in gen_ids:
                img = R[g][frontier]
                fresh = img[~seen[img]]
                if fresh.size:
                    seen[fresh] = True
                    new.append(fresh)
            frontier = np.unique(np.concatenate(new)) if new else np.empty(0, dtype=np.int64)
        return np.flatnonzero(seen).astype(np.int32)

    def subgroup(self, gen_ids) -> "Subgroup":
        gen_ids = tuple(int(g) for g in gen_ids)
        return Subgroup(self, self.closure_ids(gen_ids), gen_ids)

    def subgroup_from_perms(self, perms) -> "Subgroup":
        ids = []
        for p in perms:
            i = self.element_id(p)
            if i < 0:
                raise ValueError("generator is not a member of the parent group")
            ids.append(i)
        return self.subgroup(ids)

    def parabolic(self, gen_indices) -> "Subgroup":
        """Subgroup generated by a subset of the distinguished generators."""
        gids = self.gen_ids
        return self.subgroup([gids[i] for i in gen_indices])

    def coset_min_labels(self, sub_ids: np.ndarray, gen_ids=None) -> np.ndarray:
        """For each element x, the least id in the right coset (sub)x.

        Computed by min-label propagation under left multiplication by the
        subgroup's generators (or by all its elements if no gens are given).
        """
        R = self.rmul
        n = self.order
        lab = np.arange(n)
        if gen_ids is None:
            gen_ids = sub_ids
        cols = [R[:, int(g)] for g in gen_ids]  # col g at x = id of g * x
        changed = True
        while changed:
            changed = False
            for col in cols:
                nl = np.minimum(lab, lab[col])
                if not np.array_equal(nl, lab):
                    lab = nl
                    changed = True
        return lab


@dataclass
class Subgroup:
    """Subgroup of a MarkedGroup, stored as sorted element ids."""

    parent: MarkedGroup
    elem_ids: np.ndarray
    gen_ids: tuple[int, ...] = ()

    def __post_init__(self):
        self.elem_ids = np.unique(np.asarray(self.elem_ids, dtype=np.int32))

    @property
    def order(self) -> int:
        return len(self.elem_ids)

    @property
    def gens(self) -> list[np.ndarray]:
        return [self.parent.perm_of(i) for i in self.gen_ids]

    def key(self) -> bytes:
        return _ids_key(self.elem_ids)

    def contains_id(self, elem_id: int) -> bool:
        i = np.searchsorted(self.elem_ids, elem_id)
        return i < len(self.elem_ids) and self.elem_ids[i] == elem_id

    def contains(self, other: "Subgroup") -> bool:
        return bool(np.isin(other.elem_ids, self.elem_ids).all())

    def is_normal(self) -> bool:
        g = self.parent
        ids = self.elem_ids
        for gid in g.gen_ids:
            if not np.array_equal(np.sort(g.conj(ids, gid)), ids):
                return False
        return True


# ---------------------------------------------------------------------------
# group operations


def group_order(g: MarkedGroup) -> int:
    return g.order


def is_member(g: MarkedGroup, perm) -> bool:
    return g.element_id(perm) >= 0


def intersect(h1: Subgroup, h2: Subgroup) -> Subgroup:
    if h1.parent is not h2.parent:
        raise ValueError("subgroups have different parent groups")
    return Subgroup(h1.parent, np.intersect1d(h1.elem_ids, h2.elem_ids))


def product_set_intersect(h: Subgroup, a: Subgroup, b: Subgroup) -> np.ndarray:
    """Element ids of h lying in the product set a*b (not generally a group)."""
    g = h.parent
    if a.parent is not g or b.parent is not g:
        raise ValueError("subgroups have different parent groups")
    prods = np.unique(g.rmul[np.ix_(b.elem_ids, a.elem_ids)])
    return np.intersect1d(h.elem_ids, prods)


def _conjugate_class_rows(g: MarkedGroup, ids: np.ndarray, transversal: np.ndarray) -> np.ndarray:
    """Sorted conjugates ids^t, one row per transversal element."""
    R = g.rmul
    inv = g.inv_ids
    T = R[np.ix_(ids, inv[transversal].astype(np.int64))]  # T[k, t] = inv(t) * ids_k
    C = R[transversal[None, :].astype(np.int64), T]        # C[k, t] = (inv(t) * ids_k) * t
    return np.sort(C.T, axis=1)


def _class_transversal(g: MarkedGroup, sub: Subgroup) -> np.ndarray:
    """One representative per right coset (sub)x; conjugation is constant on cosets."""
    lab = g.coset_min_labels(sub.elem_ids, sub.gen_ids or None)
    return np.unique(lab)


def are_conjugate(g: MarkedGroup, h1: Subgroup, h2: Subgroup):
    """(True, witness id) if some x conjugates h1 onto h2, else (False, None)."""
    if h1.order != h2.order:
        return False, None
    trans = _class_transversal(g, h1)
    rows = _conjugate_class_rows(g, h1.elem_ids, trans)
    target = h2.elem_ids.astype(rows.dtype)
    hits = np.flatnonzero((rows == target).all(axis=1))
    if hits.size:
        return True, int(trans[hits[0]])
    return False, None


def conjugates(g: MarkedGroup, h: Subgroup) -> list[Subgroup]:
    """The full conjugacy class of h, deduplicated, canonically ordered."""
    trans = _class_transversal(g, h)
    rows = np.unique(_conjugate_class_rows(g, h.elem_ids, trans), axis=0)
    return [Subgroup(g, row) for row in rows]


# ---------------------------------------------------------------------------
# subgroup-class lattice


@dataclass
class SubgroupClass:
    rep: Subgroup
    size: int

    @property
    def order(self) -> int:
        return self.rep.order


class _Zuppos:
    """Cyclic subgroups of prime-power order, with the conjugation action."""

    def __init__(self, g: MarkedGroup, allowed: np.ndarray | None):
        orders = g.element_orders
        self.sets: list[np.ndarray] = []
        self.gen_elem: list[int] = []
        self.of_elem = np.full(g.order, -1, dtype=np.int64)
        for e in range(1, g.order):
            o = int(orders[e])
            if not _is_prime_power(o):
                continue
            if self.of_elem[e] >= 0:
                continue
            if allowed is not None and not allowed[e]:
                continue
            ids = np.empty(o, dtype=np.int32)
            x = 0
            for k in range(o):
                ids[k] = x
                x = int(g.rmul[e, x])
            ids.sort()
            if allowed is not None and not allowed[ids].all():
                continue
            z = len(self.sets)
            self.sets.append(ids)
            self.gen_elem.append(e)
            gens_mask = orders[ids] == o
            self.of_elem[ids[gens_mask]] = z
        self.odd = [z for z, e in enumerate(self.gen_elem) if int(orders[e]) % 2 == 1]


def _lattice(g: MarkedGroup, order_bound: int, allowed: np.ndarray | None) -> list[SubgroupClass]:
    if g.order > order_bound:
        raise BoundExceeded(
            f"group order {g.order} exceeds subgroup-enumeration bound {order_bound}")
    g._build_tables()
    R = g.rmul
    n = g.order
    zup = _Zuppos(g, allowed)
    primes = _primes_dividing(n)

    member_key_to_class: dict[bytes, int] = {}
    reps: list[np.ndarray] = []
    rep_gens: list[tuple[int, ...]] = []
    normalizers: list[np.ndarray] = []
    sizes: list[int] = []

    def register(ids: np.ndarray, gen_ids: tuple[int, ...]) -> int | None:
        """Record the class of `ids`; return class index if new, else None."""
        key = _ids_key(ids)
        if key in member_key_to_class:
            return None
        sub = Subgroup(g, ids, gen_ids)
        trans = _class_transversal(g, sub)
        rows = _conjugate_class_rows(g, sub.elem_ids, trans)
        uniq = np.unique(rows, axis=0)
        cls = len(reps)
        rep_row = uniq[0].astype(np.int32)  # lex-least conjugate: the class representative
        hit = np.flatnonzero((rows == uniq[0]).all(axis=1))
        t0 = int(trans[hit[0]])
        # normalizer of the representative: union of cosets (sub)t with ids^t = rep
        s_t = trans[hit]
        a = R[sub.elem_ids.astype(np.int64), g.inv_ids[t0]]  # inv(t0) * ids
        norm = np.sort(R[np.ix_(s_t.astype(np.int64), a.astype(np.int64))].ravel())
        rep_gen_ids = tuple(int(g.conj(x, t0)) for x in gen_ids)
        reps.append(rep_row)
        rep_gens.append(rep_gen_ids)
        normalizers.append(norm.astype(np.int32))
        sizes.append(len(uniq))
        for row in uniq:
            member_key_to_class[_ids_key(row)] = cls
        return cls

    trivial = np.array([0], dtype=np.int32)
    queue = deque()
    first = register(trivial, ())
    queue.append(first)

    def coset_reduced(cands: np.ndarray, H: np.ndarray) -> np.ndarray:
        """Keep one candidate per coset H*c (the one equal to min of its coset)."""
        if cands.size == 0:
            return cands
        keep = []
        seen = set()
        for c in cands:
            m = int(R[int(c)][H.astype(np.int64)].min())
            if m not in seen:
                seen.add(m)
                keep.append(c)
        return np.asarray(keep)

    def join(H: np.ndarray, h_gens: tuple[int, ...], z_gen: int) -> tuple[np.ndarray, tuple[int, ...]] | None:
        gens2 = tuple(h_gens) + (z_gen,)
        Hl = H.astype(np.int64)
        rep0 = 0
        seen = {rep0}
        repslist = [rep0]
        qq = deque([rep0])
        while qq:
            r = qq.popleft()
            for ge in gens2:
                x = int(R[ge, r])
                c = int(R[x][Hl].min())
                if c not in seen:
                    seen.add(c)
                    repslist.append(c)
                    qq.append(c)
        K = np.unique(R[np.ix_(np.asarray(repslist, dtype=np.int64), Hl)])
        if allowed is not None and not allowed[K].all():
            return None
        return K.astype(np.int32), gens2

    while queue:
        cls = queue.popleft()
        H = reps[cls]
        h_gens = rep_gens[cls]
        N = normalizers[cls].astype(np.int64)
        in_H = np.zeros(n, dtype=bool)
        in_H[H] = True
        # cyclic extensions: g in N(H) \ H with g^p in H, prime p
        outside = N[~in_H[N]]
        if allowed is not None:
            outside = outside[allowed[outside]]
        for p in primes:
            if outside.size == 0:
                break
            pw = g.power(outside, p)
            cands = outside[in_H[pw]]
            for c in coset_reduced(cands, H):
                parts = [H]
                x = int(c)
                for _ in range(p - 1):
                    parts.append(R[x][H.astype(np.int64)].astype(np.int32))
                    x = int(R[int(c), x])
                K = np.unique(np.concatenate(parts))
                if allowed is not None and not allowed[K].all():
                    continue
                new = register(K, h_gens + (int(c),))
                if new is not None:
                    queue.append(new)
        # odd-zuppo joins (reach non-soluble subgroups)
        if zup.odd:
            # orbit representatives of zuppos under N(H)
            seen_orbit = set()
            invN = g.inv_ids[N]
            for z in zup.odd:
                if z in seen_orbit:
                    continue
                e = zup.gen_elem[z]
                orbit = zup.of_elem[R[N, R[e][invN]]]
                seen_orbit.update(int(o) for o in orbit)
                if in_H[zup.sets[z]].all():
                    continue
                res = join(H, h_gens, e)
                if res is None:
                    continue
                K, gens2 = res
                new = register(K, gens2)
                if new is not None:
                    queue.append(new)
        # mark this class done; nothing else to do

    order_key = sorted(range(len(reps)), key=lambda c: (len(reps[c]), tuple(reps[c])))
    return [SubgroupClass(Subgroup(g, reps[c], rep_gens[c]), sizes[c]) for c in order_key]


def enumerate_subgroups(g: MarkedGroup, order_bound: int = DEFAULT_SUBGROUP_BOUND) -> list[SubgroupClass]:
    """One representative per conjugacy class of subgroups, with class sizes.

    Representatives are the lexicographically least sorted element-id lists of
    their classes, listed by (order, elements).
    """
    return _lattice(g, order_bound, None)


def enumerate_subgroups_within(g: MarkedGroup, allowed: np.ndarray,
                               order_bound: int = DEFAULT_SUBGROUP_BOUND) -> list[SubgroupClass]:
    """Subgroup classes whose elements all lie in the `allowed` mask.

    The mask must be closed under conjugation; subsets of allowed subgroups
    are allowed, so the search runs the same extension/join moves restricted
    to the allowed universe without losing any such subgroup.
    """
    if not allowed[0]:
        raise ValueError("the identity must be allowed")
    return _lattice(g, order_bound, allowed)
