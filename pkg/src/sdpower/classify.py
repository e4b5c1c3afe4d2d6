"""Decide whether a finite semigroup has countably many or continuum many
countable subdirect powers, with the chain of decisions that led there."""

from __future__ import annotations

from dataclasses import dataclass, field

from .structure import (
    extension_decomposition,
    idempotents,
    is_group,
    is_rectangular_band,
    minimal_ideal,
    nilpotency_class,
    rees_quotient,
)

COUNTABLE = "countable-SDPT"
CONTINUUM = "continuum-SDPT"
UNCLASSIFIED = "unclassified"

# rule id -> citation shown in reports
CITATIONS = {
    "abelian-group": "finite groups: countably many iff abelian (Hickin-Plotkin; McKenzie), external theorem",
    "non-abelian-group": "finite groups: continuum many unless abelian (Hickin-Plotkin; McKenzie), external theorem",
    "rectangular-band": "finite rectangular bands have countable type",
    "several-idempotents": "commutative with at least two idempotents: hat construction over a semilattice of idempotents",
    "null": "null semigroups are determined by their size",
    "nilpotent-class-ge-3": "nilpotent of class > 2: T_M construction, divisor counts",
    "group-by-nilpotent": "ideal extension of a non-trivial group by a non-trivial nilpotent semigroup: W_M construction, root counts",
    "outside-known-cases": "no settled case applies",
}

SUGGESTED = {
    "several-idempotents": "hat",
    "nilpotent-class-ge-3": "tm",
    "group-by-nilpotent": "wm",
}


@dataclass
class ClassificationReport:
    verdict: str
    rule: str
    route: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    suggested_construction: str | None = None

    def to_json(self):
        return {
            "verdict": self.verdict,
            "rule": self.rule,
            "route": self.route,
            "witnesses": self.witnesses,
            "suggested_construction": self.suggested_construction,
        }


def _step(route, condition, outcome, rule=None):
    route.append({
        "condition": condition,
        "outcome": outcome,
        "citation": CITATIONS.get(rule, ""),
        **({"rule": rule} if rule else {}),
    })


def classify(S):
    route = []
    witnesses = {"order": S.order, "commutative": S.is_commutative(),
                 "idempotents": len(idempotents(S))}

    def done(verdict, rule):
        return ClassificationReport(verdict, rule, route, witnesses, SUGGESTED.get(rule))

    grp = is_group(S)
    _step(route, "S is a group", grp)
    if grp:
        ab = S.is_commutative()
        rule = "abelian-group" if ab else "non-abelian-group"
        _step(route, "group is abelian", ab, rule)
        return done(COUNTABLE if ab else CONTINUUM, rule)

    rb = is_rectangular_band(S)
    _step(route, "S is a rectangular band", rb is not None)
    if rb is not None:
        witnesses["rectangular_band"] = list(rb)
        _step(route, f"rectangular band of shape {rb[0]}x{rb[1]}", True, "rectangular-band")
        return done(COUNTABLE, "rectangular-band")

    K, kernel_is_group = minimal_ideal(S)
    witnesses["kernel_order"] = len(K)
    witnesses["kernel_is_group"] = kernel_is_group

    if S.is_commutative():
        _step(route, "S is commutative", True)
        n_id = len(idempotents(S))
        if n_id >= 2:
            _step(route, "at least two idempotents", True, "several-idempotents")
            return done(CONTINUUM, "several-idempotents")
        _step(route, "at least two idempotents", False)
        dec = extension_decomposition(S)
        witnesses["decomposition"] = {
            "group_order": dec.group.order,
            "quotient_order": dec.quotient.order,
            "quotient_class": dec.quotient_class,
        }
        if dec.group_trivial:
            _step(route, "kernel group is trivial, S is nilpotent", True)
            k = dec.quotient_class
            witnesses["nilpotency_class"] = k
            if k <= 2:
                _step(route, f"nilpotency class {k} <= 2 (null)", True, "null")
                return done(COUNTABLE, "null")
            _step(route, f"nilpotency class {k} >= 3", True, "nilpotent-class-ge-3")
            return done(CONTINUUM, "nilpotent-class-ge-3")
        _step(route, "kernel group is trivial, S is nilpotent", False)
        if dec.quotient_trivial:
            # unreachable after the group test; kept so the route mirrors the full case split
            _step(route, "nilpotent quotient is trivial, S is an abelian group", True, "abelian-group")
            return done(COUNTABLE, "abelian-group")
        _step(route, "both kernel group and nilpotent quotient are non-trivial", True, "group-by-nilpotent")
        return done(CONTINUUM, "group-by-nilpotent")

    _step(route, "S is commutative", False)
    # the nilpotent and group-extension arguments do not use commutativity
    k = nilpotency_class(S)
    if k is not None:
        witnesses["nilpotency_class"] = k
        if k >= 3:
            _step(route, f"nilpotent of class {k} >= 3", True, "nilpotent-class-ge-3")
            return done(CONTINUUM, "nilpotent-class-ge-3")
    if kernel_is_group and len(K) > 1:
        Q = rees_quotient(S, K)
        qk = nilpotency_class(Q)
        if qk is not None and qk >= 2:
            witnesses["decomposition"] = {"group_order": len(K), "quotient_order": Q.order,
                                          "quotient_class": qk}
            _step(route, "kernel is a non-trivial group with non-trivial nilpotent quotient", True,
                  "group-by-nilpotent")
            return done(CONTINUUM, "group-by-nilpotent")
    _step(route, "none of the settled cases applies", True, "outside-known-cases")
    return done(UNCLASSIFIED, "outside-known-cases")


def abelian_group_or_null(S):
    """For commutative S: countable iff S is an abelian group or a null semigroup."""
    if is_group(S):
        return COUNTABLE
    k = nilpotency_class(S)
    if k is not None and k <= 2:
        return COUNTABLE
    return CONTINUUM


def witness_pair(S, report=None):
    """Two members of the suggested witness family for distinct parameters.

    Returns a pair of WitnessFamily objects, or None when the verdict is
    not continuum or rests on the external group theorem.
    """
    from . import constructions as C
    from .structure import idempotent_semilattice

    report = report or classify(S)
    kind = report.suggested_construction
    if kind == "tm":
        n = S.order
        return tuple(C.t_m(S, f"[{m};+{n}]", 1, 1 + m) for m in (n, 2 * n))
    if kind == "wm":
        n = S.order
        return tuple(C.w_m(S, f"[{m}]", 1, 1 + m) for m in (n + 1, n + 2))
    if kind == "hat":
        E = idempotent_semilattice(S)
        out = []
        for length in (3, 4):
            P = C.chain_algebra(E.base, C.build_chain(length))
            U = C.tilde(E.base, P)
            T = C.hat(S, U)
            out.append(C.WitnessFamily(
                label=f"hat(tilde(chain {length}))", base=S, generators=[], truncation=T,
                certificate_hooks=("idempotent-semilattice",),
                params={"construction": "hat", "chain_length": length},
            ))
        return tuple(out)
    return None
