"""Isomorphism invariants of tuple algebras and non-isomorphism certificates."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .errors import IsomorphismTimeout, NotClosedError, PreconditionError
from .iso import are_isomorphic, divisibility_matrix, fingerprint
from .semigroup import FiniteSemigroup, TupleAlgebra, subsemigroup, zero_of
from .structure import SemilatticeOrder, is_semilattice, minimal_ideal

KINDS = (
    "divisor-spectrum",
    "root-spectrum",
    "idempotent-semilattice",
    "principal-ideal-filter",
    "exhaustive",
)


def _abstract(T):
    if isinstance(T, FiniteSemigroup):
        return T
    if not T.closed:
        raise NotClosedError("invariants need a closed tuple algebra")
    return T.as_semigroup()


def divisor_counts(T):
    """|Div_T(t)| for every element t, where u divides t iff t = uv with v in T."""
    A = _abstract(T)
    counts = divisibility_matrix(A).sum(axis=0)
    return [int(c) for c in counts]


def divisor_spectrum(T):
    """Sorted multiset of divisor counts over the non-zero elements."""
    A = _abstract(T)
    counts = divisor_counts(A)
    z = zero_of(A)
    return tuple(sorted(c for i, c in enumerate(counts) if i != z))


def zero_divisor_count(T):
    A = _abstract(T)
    z = zero_of(A)
    return None if z is None else divisor_counts(A)[z]


def kernel_group_order(S):
    K, is_grp = minimal_ideal(S)
    if not is_grp:
        raise PreconditionError("the kernel of the base is not a group")
    return len(K)


def root_spectrum(T, exponent):
    """Number of (exponent)-th roots outside the kernel-group part, per kernel-group member.

    The kernel-group part is the set of members with every coordinate in
    the kernel G of the base; ``exponent`` must be |G| + 1.
    """
    if not T.closed:
        raise NotClosedError("root_spectrum needs a closed tuple algebra")
    S = T.base
    m = kernel_group_order(S)
    if exponent != m + 1:
        raise PreconditionError(f"exponent must be |G| + 1 = {m + 1}, got {exponent}")
    K, _ = minimal_ideal(S)
    G_part = [t for t in T if all(v in K for v in t)]
    counts = {t: 0 for t in G_part}
    for t in T:
        if t in counts:
            continue
        r = tuple(S.power(v, exponent) for v in t)
        if r in counts:
            counts[r] += 1
    return counts


def abstract_root_spectrum(A, exponent):
    """Root counts over the kernel of A when that kernel is a group, else None."""
    K, is_grp = minimal_ideal(A)
    if not is_grp:
        return None
    counts = Counter({k: 0 for k in K})
    for t in range(A.order):
        if t in K:
            continue
        r = A.power(t, exponent)
        if r in K:
            counts[r] += 1
    return tuple(sorted(counts.values()))


def idempotent_tuples(T):
    return [t for t in T if T.mul(t, t) == t]


def idempotent_semilattice_of(T):
    """The idempotent members as a semilattice; embedding holds member positions."""
    A = _abstract(T)
    ids = [i for i in range(A.order) if A.rows[i][i] == i]
    try:
        E, idx = subsemigroup(A, ids)
    except NotClosedError:
        raise PreconditionError("idempotents are not closed under the product") from None
    return SemilatticeOrder(E, tuple(idx))


def principal_profile(A):
    """Multiset of (|down-set|, |up-set|) over a semilattice, else None."""
    if not is_semilattice(A):
        return None
    rows = A.rows
    n = A.order
    prof = []
    for s in range(n):
        down = sum(1 for t in range(n) if rows[t][s] == t)
        up = sum(1 for t in range(n) if rows[s][t] == s)
        prof.append((down, up))
    return tuple(sorted(prof))


def _idempotent_payload(A):
    try:
        E = idempotent_semilattice_of(A)
    except PreconditionError:
        return {"closed": False, "count": sum(1 for i in range(A.order) if A.rows[i][i] == i)}
    fp = fingerprint(E.base)
    return {"closed": True, "fingerprint": fp.to_json(), "profile": [list(p) for p in principal_profile(E.base)]}


@dataclass
class Certificate:
    kind: str
    payload: dict
    verdict: str                       # distinguished | equivalent-under-invariant | unknown
    replay: str = ""
    trail: list = field(default_factory=list)

    @property
    def distinguished(self):
        return self.verdict == "distinguished"

    def to_json(self):
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "payload": self.payload,
            "trail": self.trail,
            "replay": self.replay,
        }


def _payloads(A, B, exponent_a, exponent_b):
    """Invariant payloads in the order they are tried: (kind, fn) pairs."""

    def div(X):
        return {
            "size": X.order,
            "spectrum": list(divisor_spectrum(X)),
            "zero_divisors": zero_divisor_count(X),
        }

    def roots(X, exponent):
        if exponent is None:
            return None
        spec = abstract_root_spectrum(X, exponent)
        return None if spec is None else {"exponent": exponent, "spectrum": list(spec)}

    def ideal(X):
        prof = principal_profile(X)
        return None if prof is None else [list(p) for p in prof]

    yield "divisor-spectrum", div(A), div(B)
    yield "root-spectrum", roots(A, exponent_a), roots(B, exponent_b)
    yield "idempotent-semilattice", _idempotent_payload(A), _idempotent_payload(B)
    yield "principal-ideal-filter", ideal(A), ideal(B)


def _base_exponent(T):
    if isinstance(T, TupleAlgebra):
        K, is_grp = minimal_ideal(T.base)
        return len(K) + 1 if is_grp else None
    return None


def distinguish(T1, T2, budget=10**7, cross_base=False, replay=""):
    """Try the invariants in turn, then the exhaustive oracle."""
    if isinstance(T1, TupleAlgebra) and isinstance(T2, TupleAlgebra):
        if T1.base != T2.base and not cross_base:
            raise PreconditionError("algebras over different bases need cross_base=True")
    A, B = _abstract(T1), _abstract(T2)
    trail = []
    for kind, pa, pb in _payloads(A, B, _base_exponent(T1), _base_exponent(T2)):
        if pa is None or pb is None:
            trail.append({"kind": kind, "outcome": "not applicable"})
            continue
        if pa != pb:
            return Certificate(kind, {"first": pa, "second": pb}, "distinguished", replay, trail)
        trail.append({"kind": kind, "outcome": "equal"})
    try:
        f = are_isomorphic(A, B, budget=budget)
    except IsomorphismTimeout as exc:
        return Certificate("exhaustive", {"budget": exc.budget}, "unknown", replay, trail)
    if f is None:
        return Certificate("exhaustive", {"isomorphism": None}, "distinguished", replay, trail)
    return Certificate(
        "exhaustive",
        {"isomorphism": [[A.elements[a], B.elements[b]] for a, b in enumerate(f)]},
        "equivalent-under-invariant",
        replay,
        trail,
    )


def check_certificate(cert, T1, T2):
    """Recompute a certificate's invariant and confirm its verdict."""
    if cert.kind == "exhaustive":
        again = distinguish(T1, T2, cross_base=True)
        return again.kind == "exhaustive" and again.verdict == cert.verdict
    A, B = _abstract(T1), _abstract(T2)
    for kind, pa, pb in _payloads(A, B, _base_exponent(T1), _base_exponent(T2)):
        if kind == cert.kind:
            def norm(v):
                return json.loads(json.dumps(v))

            same = norm({"first": pa, "second": pb}) == norm(cert.payload)
            return same and (pa != pb) == cert.distinguished
    return False
