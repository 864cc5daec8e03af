"""Independent brute-force oracles for the test suite.

Everything here works on plain tuples with hand-rolled closure loops, kept
deliberately separate from the library's table-based algorithms so the two
routes can disagree.
"""

from itertools import permutations, product


def perm_mul(p, q):
    """Apply p then q."""
    return tuple(q[i] for i in p)


def perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def mulclose(gens, limit=100000):
    """All products of the generators, by breadth-first word closure."""
    gens = [tuple(g) for g in gens]
    n = len(gens[0]) if gens else 0
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = perm_mul(p, g)
                if q not in elems:
                    if len(elems) >= limit:
                        raise RuntimeError("closure limit hit")
                    elems.add(q)
                    new.append(q)
        frontier = new
    return elems


def signed_permutation_group(n):
    """Symmetries of the n-cube as permutations of the 2n facet directions.

    Point i and point i+n are opposite; elements permute the n axes and flip
    any subset of them.  |group| = 2^n n!.
    """
    pts = 2 * n
    out = set()
    for axes in permutations(range(n)):
        for signs in product((0, 1), repeat=n):
            img = [0] * pts
            for i in range(n):
                j = axes[i]
                img[i] = j + n * signs[i]
                img[i + n] = j + n * (1 - signs[i])
            out.add(tuple(img))
    return out


def full_icosahedral_order():
    """|±A_5| derived from the even permutations of five objects."""
    a5 = [p for p in permutations(range(5)) if _parity(p) == 0]
    return 2 * len(a5)


def _parity(p):
    seen = [False] * len(p)
    par = 0
    for s in range(len(p)):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        par ^= (length - 1) & 1
    return par


def _index_table(elems):
    """The group's own multiplication table, for fast exhaustive search."""
    order = sorted(elems)
    index = {e: i for i, e in enumerate(order)}
    mul = [[index[perm_mul(a, b)] for b in order] for a in order]
    inv = [index[perm_inv(e)] for e in order]
    ident = index[tuple(range(len(order[0])))]
    return order, index, mul, inv, ident


def brute_force_subgroups(elems):
    """Every subgroup of a group given as a set of tuple permutations.

    Exhaustive extension: every known subgroup is extended by every element.
    Subgroups are returned as frozensets of tuple permutations.
    """
    order, index, mul, inv, ident = _index_table(elems)
    n = len(order)

    def close(gens):
        seen = {ident}
        queue = [ident]
        while queue:
            x = queue.pop()
            row = mul[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    trivial = frozenset([ident])
    gens_of = {trivial: ()}
    frontier = [trivial]
    while frontier:
        new = []
        for sub in frontier:
            gens = gens_of[sub]
            for e in range(n):
                if e in sub:
                    continue
                bigger = close(gens + (e,))
                if bigger not in gens_of:
                    gens_of[bigger] = gens + (e,)
                    new.append(bigger)
        frontier = new
    return {frozenset(order[i] for i in sub) for sub in gens_of}


def conjugacy_partition(subgroups, elems):
    """Partition a set of subgroups (frozensets) into conjugacy classes."""
    order, index, mul, inv, ident = _index_table(elems)
    as_ids = {frozenset(index[x] for x in h) for h in subgroups}
    remaining = set(as_ids)
    classes = []
    while remaining:
        h = next(iter(remaining))
        cls = set()
        for g in range(len(order)):
            gi = inv[g]
            img = frozenset(mul[mul[gi][x]][g] for x in h)
            cls.add(img)
        classes.append(cls)
        remaining -= cls
    return classes
