"""Brute-force reference implementations, kept independent of sdpower internals."""

from itertools import permutations, product


def is_associative(rows):
    r = range(len(rows))
    return all(rows[rows[a][b]][c] == rows[a][rows[b][c]] for a in r for b in r for c in r)


def all_semigroup_tables(n):
    for flat in product(range(n), repeat=n * n):
        rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if is_associative(rows):
            yield rows


def relabelled(rows, p):
    # old element a becomes p[a]
    n = len(rows)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[p[a]][p[b]] = p[rows[a][b]]
    return tuple(map(tuple, out))


def canonical_table(rows):
    return min(relabelled(rows, p) for p in permutations(range(len(rows))))


def semigroups_up_to_iso(n):
    return sorted({canonical_table(t) for t in all_semigroup_tables(n)})


def brute_isomorphic(a_rows, b_rows):
    if len(a_rows) != len(b_rows):
        return False
    b_rows = tuple(map(tuple, b_rows))
    return any(relabelled(a_rows, p) == b_rows for p in permutations(range(len(a_rows))))


def pointwise(rows, a, b):
    return tuple(rows[x][y] for x, y in zip(a, b))


def brute_closed_subsets(rows, universe):
    """Every product-closed non-empty subset of ``universe`` (tuples), by bitmask."""
    N = len(universe)
    out = []
    for mask in range(1, 1 << N):
        members = [universe[i] for i in range(N) if mask >> i & 1]
        s = set(members)
        if all(pointwise(rows, a, b) in s for a in members for b in members):
            out.append(frozenset(members))
    return out


def is_subdirect_set(members, order, arity):
    return all({t[c] for t in members} == set(range(order)) for c in range(arity))


def divisor_count(members, mul, s):
    """Number of t in members with s = t u for some u in members."""
    return sum(1 for t in members if any(mul(t, u) == s for u in members))


def left_divisor_set(rows, s):
    n = len(rows)
    return {t for t in range(n) if any(rows[t][u] == s for u in range(n))}


def zero_element(rows):
    n = len(rows)
    for z in range(n):
        if all(rows[z][a] == z and rows[a][z] == z for a in range(n)):
            return z
    return None


def is_null(rows):
    z = zero_element(rows)
    return z is not None and all(v == z for row in rows for v in row)


def is_abelian_group(rows):
    n = len(rows)
    if any(rows[a][b] != rows[b][a] for a in range(n) for b in range(n)):
        return False
    ids = [e for e in range(n) if all(rows[e][a] == a for a in range(n))]
    if not ids:
        return False
    e = ids[0]
    return all(any(rows[a][b] == e for b in range(n)) for a in range(n))


def idempotent_indices(rows):
    return [i for i in range(len(rows)) if rows[i][i] == i]


def seq_at(pre, per, i):
    return pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)]
