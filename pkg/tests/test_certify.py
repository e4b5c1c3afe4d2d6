import json
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sdpower import catalog
from sdpower.census import enumerate_subdirect
from sdpower.certify import (
    Certificate,
    check_certificate,
    distinguish,
    divisor_counts,
    divisor_spectrum,
    idempotent_semilattice_of,
    root_spectrum,
    zero_divisor_count,
)
from sdpower.constructions import build_chain, chain_algebra, hat, t_m, tilde, w_m
from sdpower.errors import PreconditionError
from sdpower.iso import are_isomorphic
from sdpower.semigroup import TupleAlgebra, relabel
from sdpower.structure import idempotent_semilattice


def test_chain_divisors_by_definition():
    SL3 = catalog.get("SL3")
    T = TupleAlgebra(SL3, [(0,), (1,), (2,)])
    brute = [oracles.divisor_count(T.members, T.mul, t) for t in T.members]
    assert divisor_counts(T) == brute == [3, 2, 1]
    # the zero is reported separately
    assert divisor_spectrum(T) == (1, 2)
    assert zero_divisor_count(T) == 3


def test_tm_spectrum_has_one_four():
    fam = t_m(catalog.get("NIL3"), "3k", 1, 4)
    spec = divisor_spectrum(fam.truncation)
    assert spec.count(4) == 1
    assert spec.count(0) >= 3          # the three chi elements


def _relabel_algebra(T, perm, coord_perm):
    S2 = relabel(T.base, perm)
    members = [tuple(perm[t[c]] for c in coord_perm) for t in T.members]
    return TupleAlgebra(S2, members, arity=T.arity)


def _algebras():
    L2 = catalog.get("L2")
    out = list(enumerate_subdirect(L2, 2).representatives)
    out.append(t_m(catalog.get("NIL3"), "3k", 1, 4).truncation)
    out.append(w_m(catalog.get("GN3"), "[4]", 1, 5).truncation)
    SL3 = catalog.get("SL3")
    out.append(tilde(SL3, chain_algebra(SL3, build_chain(4))))
    return out


ALGEBRAS = _algebras()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(range(len(ALGEBRAS))), st.randoms(use_true_random=False))
def test_spectra_invariant_under_relabeling(k, rnd):
    T = ALGEBRAS[k]
    perm = list(range(T.base.order))
    rnd.shuffle(perm)
    coords = list(range(T.arity))
    rnd.shuffle(coords)
    R = _relabel_algebra(T, perm, coords)
    assert R.closed
    assert divisor_spectrum(R) == divisor_spectrum(T)
    if T.base.elements == catalog.get("GN3").elements:
        a = sorted(root_spectrum(T, 3).values())
        b = sorted(root_spectrum(R, 3).values())
        assert a == b


def test_soundness_on_small_algebras():
    L2 = catalog.get("L2")
    pool = [T for T in enumerate_subdirect(L2, 3).representatives if len(T) <= 20]
    pool += [T for T in ALGEBRAS if len(T) <= 20]
    for A, B in combinations(pool, 2):
        cert = distinguish(A, B, cross_base=True)
        if cert.distinguished:
            assert are_isomorphic(A.as_semigroup(), B.as_semigroup(), budget=10**7) is None


def test_chain_versus_v_in_l2_squared():
    L2 = catalog.get("L2")
    chain = TupleAlgebra(L2, [(0, 0), (0, 1), (1, 1)])
    vee = TupleAlgebra(L2, [(0, 0), (0, 1), (1, 0)])
    cert = distinguish(chain, vee)
    assert cert.distinguished
    assert check_certificate(cert, chain, vee)
    same = distinguish(chain, chain)
    assert same.verdict == "equivalent-under-invariant" and same.kind == "exhaustive"


def test_idempotent_semilattice_of_examples():
    S = catalog.get("SL2N")
    z, one = S.index("0"), S.index("1")
    U = TupleAlgebra(S, [(z, z), (z, one), (one, one)])
    E = idempotent_semilattice_of(hat(S, U))
    Uh = hat(S, U)
    assert {Uh.members[i] for i in E.embedding} == set(U.members)
    D = TupleAlgebra(catalog.get("L2"), [(0, 0), (1, 1)])
    assert idempotent_semilattice_of(D).base.order == 2
    fam = t_m(catalog.get("NIL3"), "3k", 1, 4)
    assert idempotent_semilattice_of(fam.truncation).base.order == 1


def test_hat_families_certified_by_idempotents():
    S = catalog.get("SL2N")
    E = idempotent_semilattice(S).base
    fams = []
    for k in (3, 4):
        U = tilde(E, chain_algebra(E, build_chain(k), arity=4))
        fams.append(hat(S, U))
    cert = distinguish(*fams)
    assert cert.distinguished


def test_root_spectrum_exponent_checked():
    fam = w_m(catalog.get("GN3"), "[4]", 1, 5)
    with pytest.raises(PreconditionError):
        root_spectrum(fam.truncation, 2)


def test_roots_of_diagonal_bounded_by_order():
    fam = w_m(catalog.get("GN3"), "[4]", 1, 5)
    T = fam.truncation
    S = T.base
    counts = root_spectrum(T, 3)
    for s in range(S.order):
        d = (s,) * 5
        if d in counts:
            assert counts[d] <= S.order


def test_cross_base_needs_flag():
    A = TupleAlgebra(catalog.get("L2"), [(0,), (1,)])
    B = TupleAlgebra(catalog.get("Z2"), [(0,), (1,)])
    with pytest.raises(PreconditionError):
        distinguish(A, B)
    assert distinguish(A, B, cross_base=True).distinguished


def test_certificate_json_is_materialised():
    A, B = (t_m(catalog.get("NIL3"), M, 1, 7).truncation for M in ("3k", "[6;+3]"))
    cert = distinguish(A, B, replay="sdpower certify a.json b.json")
    doc = json.loads(json.dumps(cert.to_json()))
    assert doc["kind"] == "divisor-spectrum"
    assert doc["payload"]["first"]["spectrum"] != doc["payload"]["second"]["spectrum"]
    assert doc["replay"].startswith("sdpower certify")
    again = Certificate(doc["kind"], doc["payload"], doc["verdict"])
    assert check_certificate(again, A, B)
