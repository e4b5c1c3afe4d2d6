"""Isomorphism invariants and a backtracking isomorphism oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import IsomorphismTimeout

DEFAULT_NODE_BUDGET = 1_000_000


def divisibility_matrix(S):
    """Boolean matrix D with D[t, s] true iff s = t*u for some u in S."""
    n = S.order
    D = np.zeros((n, n), dtype=bool)
    D[np.arange(n)[:, None], S.table] = True
    return D


def element_profiles(S):
    """Per-element isomorphism-invariant profile.

    (is idempotent, monogenic index, monogenic period, number of left
    divisors, number of elements it left-divides).
    """
    if "profiles" not in S._cache:
        D = divisibility_matrix(S)
        div_counts = D.sum(axis=0)
        divides = D.sum(axis=1)
        profiles = []
        for i in range(S.order):
            index, period = S.monogenic(i)
            profiles.append((S.is_idempotent(i), index, period, int(div_counts[i]), int(divides[i])))
        S._cache["profiles"] = tuple(profiles)
    return S._cache["profiles"]


@dataclass(frozen=True)
class Fingerprint:
    order: int
    idempotents: int
    profiles: tuple

    def to_json(self):
        return {
            "order": self.order,
            "idempotents": self.idempotents,
            "profiles": [list(p) for p in self.profiles],
        }


def fingerprint(S):
    profiles = element_profiles(S)
    return Fingerprint(
        order=S.order,
        idempotents=sum(1 for p in profiles if p[0]),
        profiles=tuple(sorted(profiles)),
    )


def _search_order(A, cand_count):
    """Placement order for A's elements: a generator, then everything it forces.

    Returns (order, definitions) where definitions[a] is a pair (u, v) of
    earlier-placed elements with u*v = a, or None for a branching generator.
    """
    n = A.order
    rows = A.rows
    placed = []
    seen = [False] * n
    definition = [None] * n
    while len(placed) < n:
        gen = min((a for a in range(n) if not seen[a]), key=lambda a: (cand_count[a], a))
        seen[gen] = True
        placed.append(gen)
        queue = [gen]
        while queue:
            x = queue.pop(0)
            for y in list(placed):
                for u, v in ((x, y), (y, x)):
                    c = rows[u][v]
                    if not seen[c]:
                        seen[c] = True
                        definition[c] = (u, v)
                        placed.append(c)
                        queue.append(c)
    return placed, definition


def are_isomorphic(A, B, budget=DEFAULT_NODE_BUDGET):
    """Find a product-preserving bijection A -> B.

    Returns a list ``f`` with ``f[a]`` the image of element ``a``, or None
    when the semigroups are not isomorphic.  Raises IsomorphismTimeout when
    more than ``budget`` search nodes are needed.
    """
    if A.order != B.order:
        return None
    if fingerprint(A) != fingerprint(B):
        return None
    n = A.order
    pa, pb = element_profiles(A), element_profiles(B)
    by_profile = {}
    for b in range(n):
        by_profile.setdefault(pb[b], []).append(b)
    candidates = [by_profile.get(pa[a], []) for a in range(n)]
    order, definition = _search_order(A, [len(c) for c in candidates])
    pos = [0] * n
    for p, a in enumerate(order):
        pos[a] = p
    preimages = [[] for _ in range(n)]
    ra, rb = A.rows, B.rows
    for u in range(n):
        for v in range(n):
            preimages[ra[u][v]].append((u, v))

    f = [-1] * n
    used = [False] * n
    nodes = 0

    def consistent(a, p):
        fa = f[a]
        for u, v in preimages[a]:
            if pos[u] <= p and pos[v] <= p and rb[f[u]][f[v]] != fa:
                return False
        row = ra[a]
        for y in order[:p + 1]:
            c = row[y]
            if pos[c] <= p and f[c] != rb[fa][f[y]]:
                return False
            c = ra[y][a]
            if pos[c] <= p and f[c] != rb[f[y]][fa]:
                return False
        return True

    def place(p):
        nonlocal nodes
        if p == n:
            return True
        a = order[p]
        if definition[a] is not None:
            u, v = definition[a]
            options = [rb[f[u]][f[v]]]
        else:
            options = candidates[a]
        for b in options:
            if used[b] or pb[b] != pa[a]:
                continue
            nodes += 1
            if nodes > budget:
                raise IsomorphismTimeout(budget)
            f[a] = b
            used[b] = True
            if consistent(a, p) and place(p + 1):
                return True
            used[b] = False
            f[a] = -1
        return False

    if place(0):
        return list(f)
    return None


def is_isomorphism(A, B, f):
    n = A.order
    if B.order != n or sorted(f) != list(range(n)):
        return False
    ra, rb = A.rows, B.rows
    return all(f[ra[u][v]] == rb[f[u]][f[v]] for u in range(n) for v in range(n))


def profile_counter(S):
    return Counter(element_profiles(S))
