"""Structural analysis of finite semigroups.

Idempotents, archimedean components of commutative semigroups, the
semilattice of idempotents, kernels, nilpotency, Rees quotients and
rectangular bands.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError
from .semigroup import FiniteSemigroup, subsemigroup, zero_of


def idempotents(S):
    return frozenset(i for i in range(S.order) if S.rows[i][i] == i)


def _require_commutative(S, what):
    if not S.is_commutative():
        raise PreconditionError(f"{what} is only defined here for commutative semigroups")


def _powers(S, s):
    """All distinct powers of s, generated until the monogenic cycle closes."""
    index, period = S.monogenic(s)
    out = []
    acc = s
    for _ in range(index + period - 1):
        out.append(acc)
        acc = S.rows[acc][s]
    return out


def principal_right_ideal_with_identity(S, t):
    """t S^1 as a set of indices."""
    return frozenset(S.rows[t]) | {t}


@dataclass(frozen=True)
class ArchimedeanDecomposition:
    components: tuple            # tuple of sorted index tuples
    idempotent_of_component: tuple
    phi: tuple                   # phi[s] = idempotent of the component of s

    def component_of(self, s):
        e = self.phi[s]
        return self.components[self.idempotent_of_component.index(e)]

    def to_json(self, S):
        return {
            "components": [[S.elements[i] for i in c] for c in self.components],
            "idempotents": [S.elements[e] for e in self.idempotent_of_component],
            "phi": {S.elements[s]: S.elements[e] for s, e in enumerate(self.phi)},
        }


def eta_related(S, s, t):
    """s eta t: some power of s lies in t S^1 and some power of t lies in s S^1."""
    ts1 = principal_right_ideal_with_identity(S, t)
    ss1 = principal_right_ideal_with_identity(S, s)
    return any(p in ts1 for p in _powers(S, s)) and any(p in ss1 for p in _powers(S, t))


def archimedean(S):
    _require_commutative(S, "the archimedean decomposition")
    if "archimedean" in S._cache:
        return S._cache["archimedean"]
    n = S.order
    ideals = [principal_right_ideal_with_identity(S, t) for t in range(n)]
    powers = [_powers(S, s) for s in range(n)]
    # reach[s][t]: some power of s lies in t S^1
    reach = np.array([[any(p in ideals[t] for p in powers[s]) for t in range(n)] for s in range(n)])
    eta = reach & reach.T
    comp_of = [-1] * n
    components = []
    for s in range(n):
        if comp_of[s] >= 0:
            continue
        members = tuple(int(t) for t in np.flatnonzero(eta[s]))
        for t in members:
            comp_of[t] = len(components)
        components.append(members)
    reps = []
    for comp in components:
        ids = [s for s in comp if S.rows[s][s] == s]
        if len(ids) != 1:
            raise AssertionError(f"component {comp} has {len(ids)} idempotents")
        reps.append(ids[0])
    phi = tuple(reps[comp_of[s]] for s in range(n))
    order = sorted(range(len(components)), key=lambda c: reps[c])
    dec = ArchimedeanDecomposition(
        components=tuple(components[c] for c in order),
        idempotent_of_component=tuple(reps[c] for c in order),
        phi=phi,
    )
    S._cache["archimedean"] = dec
    return dec


@dataclass(frozen=True)
class SemilatticeOrder:
    """A finite semilattice with its order s <= t iff st = s.

    ``embedding[k]`` is the index, in the ambient semigroup, of element
    ``k`` of ``base`` (the identity map when the semilattice stands alone).
    """

    base: FiniteSemigroup
    embedding: tuple = field(default=())

    def __post_init__(self):
        if not self.embedding:
            object.__setattr__(self, "embedding", tuple(range(self.base.order)))
        S = self.base
        if not S.is_commutative() or len(idempotents(S)) != S.order:
            raise PreconditionError("a semilattice must be commutative with every element idempotent")

    def leq(self, s, t):
        return self.base.rows[s][t] == s

    @property
    def zero(self):
        return zero_of(self.base)

    def minimal_nonzero(self):
        return minimal_nonzero(self)

    def principal_ideal(self, s):
        return principal_ideal(self, s)

    def principal_filter(self, s):
        return principal_filter(self, s)


def is_semilattice(S):
    return S.is_commutative() and len(idempotents(S)) == S.order


def idempotent_semilattice(S):
    """E(S) with its order; checks that phi induces S/eta ~ E(S)."""
    _require_commutative(S, "the idempotent semilattice")
    E, idx = subsemigroup(S, idempotents(S))
    dec = archimedean(S)
    # phi is a homomorphism onto E, constant exactly on components
    for s in range(S.order):
        for t in range(S.order):
            if dec.phi[S.rows[s][t]] != S.rows[dec.phi[s]][dec.phi[t]]:
                raise AssertionError("phi is not a homomorphism")
    if sorted(dec.idempotent_of_component) != idx:
        raise AssertionError("components do not correspond to idempotents")
    return SemilatticeOrder(E, tuple(idx))


def principal_ideal(P, s):
    rows = P.base.rows
    return frozenset(t for t in range(P.base.order) if rows[t][s] == t)


def principal_filter(P, s):
    rows = P.base.rows
    return frozenset(t for t in range(P.base.order) if rows[s][t] == s)


def minimal_nonzero(P):
    """Least-index minimal element of the semilattice with its zero removed."""
    z = P.zero
    n = P.base.order
    if n < 2 or z is None:
        raise PreconditionError("minimal_nonzero needs a non-trivial semilattice with zero")
    for s in range(n):
        if s == z:
            continue
        if principal_ideal(P, s) == {s, z}:
            return s
    raise AssertionError("finite semilattice without atoms")


def two_sided_ideal(S, s):
    """S^1 s S^1."""
    t = S.table
    left = set(t[:, s].tolist()) | {s}
    out = set(left)
    for a in left:
        out.update(t[a].tolist())
    return frozenset(out)


def is_ideal(S, subset):
    I = frozenset(subset)
    if not I:
        return False
    rows = S.rows
    return all(rows[a][i] in I and rows[i][a] in I for i in I for a in range(S.order))


def is_group(S):
    """A finite semigroup is a group iff aS = S = Sa for every a."""
    n = S.order
    t = S.table
    full = np.arange(n)
    return all(
        np.array_equal(np.sort(t[a]), full) and np.array_equal(np.sort(t[:, a]), full)
        for a in range(n)
    )


def minimal_ideal(S):
    """The kernel of S and whether it is a group under the induced product."""
    best = None
    for s in range(S.order):
        J = two_sided_ideal(S, s)
        if best is None or len(J) < len(best):
            best = J
    K, _ = subsemigroup(S, best)
    return best, is_group(K)


def powers_of_set(S, k):
    """S^k: all products of k factors, as a frozenset."""
    current = frozenset(range(S.order))
    rows = S.rows
    for _ in range(k - 1):
        current = frozenset(rows[a][b] for a in current for b in range(S.order))
    return current


def nilpotency_class(S):
    """Least k with every product of k elements equal to zero, or None."""
    z = zero_of(S)
    if z is None:
        return None
    rows = S.rows
    current = frozenset(range(S.order))
    k = 1
    while current != {z}:
        nxt = frozenset(rows[a][b] for a in current for b in range(S.order))
        if nxt == current:
            return None
        current = nxt
        k += 1
    return k


def rees_quotient(S, ideal):
    """S/I: the ideal collapsed to a zero, listed first, other elements in order."""
    I = frozenset(S.index(i) for i in ideal)
    if not is_ideal(S, I):
        raise PreconditionError("not an ideal: SIS is not contained in I")
    rest = [s for s in range(S.order) if s not in I]
    pos = {s: k + 1 for k, s in enumerate(rest)}
    for i in I:
        pos[i] = 0
    zero_name = "0"
    while zero_name in (S.elements[s] for s in rest):
        zero_name += "'"
    names = [zero_name] + [S.elements[s] for s in rest]
    members = [None] + rest
    table = [[0] * len(names) for _ in names]
    for a in range(1, len(names)):
        for b in range(1, len(names)):
            table[a][b] = pos[S.rows[members[a]][members[b]]]
    return FiniteSemigroup(names, table, validate=False)


@dataclass(frozen=True)
class ExtensionDecomposition:
    kernel: frozenset
    group: FiniteSemigroup
    quotient: FiniteSemigroup
    group_trivial: bool
    quotient_trivial: bool
    quotient_class: int | None


def extension_decomposition(S):
    """Split a single-idempotent commutative S into kernel group and nilpotent quotient."""
    _require_commutative(S, "the extension decomposition")
    if len(idempotents(S)) != 1:
        raise PreconditionError("extension decomposition needs exactly one idempotent")
    K, grp = minimal_ideal(S)
    if not grp:
        raise AssertionError("kernel of a single-idempotent commutative semigroup must be a group")
    G, _ = subsemigroup(S, K)
    Q = rees_quotient(S, K)
    cls = nilpotency_class(Q)
    if cls is None:
        raise AssertionError("Rees quotient by the kernel must be nilpotent")
    return ExtensionDecomposition(
        kernel=K,
        group=G,
        quotient=Q,
        group_trivial=G.order == 1,
        quotient_trivial=Q.order == 1,
        quotient_class=cls,
    )


def satisfies_rectangular_band_identities(S):
    t = S.table
    n = S.order
    if not all(t[i, i] == i for i in range(n)):
        return False
    # xyz = xz for all x, y, z
    xy = t                                   # (x, y)
    xyz = t[xy]                              # (x, y, z) -> (xy)z
    xz = np.broadcast_to(t[:, None, :], (n, n, n))
    return bool(np.array_equal(xyz, xz))


def is_rectangular_band(S):
    """(|I|, |J|) if S is a rectangular band, else None."""
    if not satisfies_rectangular_band_identities(S):
        return None
    rights = {frozenset(S.rows[x]) for x in range(S.order)}
    lefts = {frozenset(S.table[:, x].tolist()) for x in range(S.order)}
    return len(rights), len(lefts)


def analysis_report(S):
    """Structure summary with a stable key order."""
    K, grp = minimal_ideal(S)
    report = {
        "order": S.order,
        "commutative": S.is_commutative(),
        "idempotents": [S.elements[i] for i in sorted(idempotents(S))],
        "kernel": {"elements": [S.elements[i] for i in sorted(K)], "is_group": grp},
        "nilpotency_class": nilpotency_class(S),
        "rectangular_band": list(is_rectangular_band(S) or []) or None,
        "archimedean": None,
        "decomposition": None,
    }
    if S.is_commutative():
        report["archimedean"] = archimedean(S).to_json(S)
        if len(idempotents(S)) == 1:
            dec = extension_decomposition(S)
            report["decomposition"] = {
                "group_order": dec.group.order,
                "quotient_order": dec.quotient.order,
                "group_trivial": dec.group_trivial,
                "quotient_trivial": dec.quotient_trivial,
                "quotient_class": dec.quotient_class,
            }
    return report
