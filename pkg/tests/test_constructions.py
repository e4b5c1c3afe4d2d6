from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sdpower import catalog
from sdpower.certify import distinguish, divisor_counts, root_spectrum
from sdpower.constructions import (
    between,
    build_chain,
    chain_algebra,
    choose_xg,
    choose_xy,
    hat,
    hat_size,
    parse_mspec,
    power_identity_holds,
    t_m,
    tilde,
    tm_divisor_formula,
    w_m,
    wm_root_image,
)
from sdpower.errors import NotClosedError, PreconditionError
from sdpower.iso import are_isomorphic
from sdpower.semigroup import TupleAlgebra, is_subdirect
from sdpower.sequences import EpSeq, format_epseq, parse_epseq


def L2():
    return catalog.get("L2")


# ---------------------------------------------------------------- M literals


@pytest.mark.parametrize("text,first", [
    ("3k", [3, 6, 9, 12]),
    (">=4", [4, 5, 6, 7]),
    ("[3,9,12;+3]", [3, 9, 12, 15]),
    ("[6;+3]", [6, 9, 12, 15]),
    ("[3,6,9]", [3, 6, 9, 12]),
    ("[5]", [5, 6, 7, 8]),
])
def test_mspec_values(text, first):
    M = parse_mspec(text)
    assert M.values(4) == first
    assert parse_mspec(str(M)).values(6) == M.values(6)


@pytest.mark.parametrize("bad", ["", "k", "[3,3]", "[0]", "[4,2]", ">=0", "abc"])
def test_mspec_rejects(bad):
    with pytest.raises(PreconditionError):
        parse_mspec(bad)


def test_mspec_ranges():
    assert parse_mspec("3k").within_multiples_of(3)
    assert not parse_mspec("[3,7;+3]").within_multiples_of(3)
    assert parse_mspec(">=4").above(3) and not parse_mspec(">=3").above(3)


# ---------------------------------------------------------------- chains


def test_between_examples():
    S = L2()
    assert format_epseq(between(parse_epseq(S, "|0"), parse_epseq(S, "|1"))) == "|0,1"
    assert format_epseq(between(parse_epseq(S, "|0,1"), parse_epseq(S, "|1"))) == "|0,1,1,1"
    with pytest.raises(PreconditionError):
        between(parse_epseq(S, "|0,1"), parse_epseq(S, "|0,1"))
    with pytest.raises(PreconditionError):
        between(parse_epseq(S, "|0,1"), parse_epseq(S, "|1,0"))       # incomparable


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=8),
       st.lists(st.integers(0, 1), min_size=1, max_size=8))
def test_between_strict_sandwich(u, v):
    S = L2()
    a, b = EpSeq.recurring(S, u), EpSeq.recurring(S, v)
    lo, hi = a * b, b
    if lo == hi:
        return
    g = between(lo, hi)
    assert g.is_recurring and lo < g < hi


def test_build_chain_examples():
    assert [format_epseq(c) for c in build_chain(2)] == ["|0", "|1"]
    assert [format_epseq(c) for c in build_chain(3)] == ["|0", "|0,1", "|1"]
    ch = build_chain(5)
    assert all(a < b for a, b in combinations(ch, 2))
    with pytest.raises(PreconditionError):
        build_chain(1)


def test_chain_algebra_is_subdirect_chain():
    S = L2()
    P = chain_algebra(S, build_chain(6))
    assert len(P) == 6 and P.closed and is_subdirect(P)


# ---------------------------------------------------------------- tilde


def test_tilde_examples():
    S = catalog.get("B2")
    P = chain_algebra(S, build_chain(3))
    Pt = tilde(S, P)
    assert P.arity == 2 and len(Pt) == 5 and Pt.closed and is_subdirect(Pt)

    SL3 = catalog.get("SL3")
    P = chain_algebra(SL3, build_chain(2))
    Pt = tilde(SL3, P)
    assert len(Pt) == 3 and are_isomorphic(Pt.as_semigroup(), SL3) is not None

    S = L2()
    P = chain_algebra(S, build_chain(3), arity=3)
    assert len(tilde(S, P)) == 3


@pytest.mark.parametrize("name", ["L2", "SL3", "B2"])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
def test_tilde_is_semilattice(name, k):
    S = catalog.get(name)
    Pt = tilde(S, chain_algebra(S, build_chain(k)))
    A = Pt.as_semigroup()
    assert A.is_commutative() and all(A.mul(i, i) == i for i in range(A.order))


def test_tilde_rejects():
    SL3 = catalog.get("SL3")
    P = chain_algebra(SL3, build_chain(3))
    with pytest.raises(PreconditionError):
        tilde(SL3, P, e=SL3.index("2"))                  # not minimal non-zero
    with pytest.raises(PreconditionError):
        tilde(SL3, TupleAlgebra(SL3, [(0, 0), (0, 1)]))  # missing the all-e tuple
    with pytest.raises(PreconditionError):
        tilde(catalog.get("Z2"), P)


# ---------------------------------------------------------------- hat


def test_hat_over_singleton_components_is_identity():
    S = L2()
    U = TupleAlgebra(S, [(0, 0), (0, 1), (1, 1)])
    assert hat(S, U).members == U.members


def test_hat_examples_sl2n():
    S = catalog.get("SL2N")
    z, one = S.index("0"), S.index("1")
    U1 = TupleAlgebra(S, [(z,), (one,)])
    assert len(hat(S, U1)) == 3
    U = TupleAlgebra(S, [(z, z), (z, one), (one, one)])
    Uh = hat(S, U)
    assert len(Uh) == 7 == hat_size(S, U)
    assert Uh.closed and is_subdirect(Uh)
    idem = {t for t in Uh if Uh.mul(t, t) == t}
    assert idem == set(U.members)


def test_hat_non_subdirect_u():
    S = catalog.get("SL2N")
    z = S.index("0")
    one = S.index("1")
    U = TupleAlgebra(S, [(z, z), (z, one)])
    Uh = hat(S, U)
    assert not is_subdirect(U) and not is_subdirect(Uh)
    assert len(Uh) == 2 * 2 + 2 * 1


def test_hat_rejects():
    S = catalog.get("SL2N")
    z, one = S.index("0"), S.index("1")
    with pytest.raises(NotClosedError):
        hat(S, TupleAlgebra(S, [(z, one), (one, z)]))
    with pytest.raises(PreconditionError):
        hat(S, TupleAlgebra(S, [(z,), (S.index("a"),)]))      # a is not idempotent
    with pytest.raises(PreconditionError):
        hat(catalog.get("LZ2"), TupleAlgebra(catalog.get("LZ2"), [(0,)]))


# ---------------------------------------------------------------- T_M


def test_choose_xy_examples():
    N = catalog.get("NIL3")
    x, y = choose_xy(N)
    assert (N.elements[x], N.elements[y]) == ("y", "x")
    with pytest.raises(PreconditionError):
        choose_xy(catalog.get("N2"))
    M = catalog.get("NIL4")
    x, y = choose_xy(M)
    assert (M.elements[x], M.elements[y]) == ("t3", "t2")


def _expected_tm_product(S, x, y, z, la, lb, n):
    # the four non-zero product rules, every other product zero
    zero = [z] * n
    if la[0] == "zero" or lb[0] == "zero" or la[1] != lb[1]:
        return tuple(zero)
    left = la[2] if la[0] == "sigma" else y
    right = lb[2] if lb[0] == "sigma" else y
    zero[la[1] - 1] = S.rows[left][right]
    return tuple(zero)


@pytest.mark.parametrize("name,M,I,n", [("NIL3", "3k", 1, 4), ("NIL3", "[3,6]", 2, 8),
                                         ("NIL4", "4k", 1, 5)])
def test_tm_products_follow_the_four_rules(name, M, I, n):
    S = catalog.get(name)
    fam = t_m(S, M, I, n)
    x, y = choose_xy(S)
    z = S.index("0")
    T = fam.truncation
    for a, la in fam.labels.items():
        for b, lb in fam.labels.items():
            assert oracles.pointwise(S.rows, a, b) == _expected_tm_product(S, x, y, z, la, lb, n)
    assert T.closed and is_subdirect(T)


def test_tm_nil3_example():
    S = catalog.get("NIL3")
    fam = t_m(S, "3k", 1, 4)
    T = fam.truncation
    x_paper = S.index("y")
    s1 = fam.member("sigma", 1, x_paper)
    got = oracles.divisor_count(T.members, T.mul, s1)
    assert got == 4 == tm_divisor_formula(fam, 1, x_paper)
    for j in (1, 2, 3):
        c = fam.member("chi", 1, j)
        assert oracles.divisor_count(T.members, T.mul, c) == 0
    prod = T.mul(fam.member("chi", 1, 1), fam.member("chi", 1, 2))
    assert prod == fam.member("sigma", 1, S.index("y"))
    counts = divisor_counts(T)
    z = T.index[T.zero_tuple()]
    assert sorted(c for i, c in enumerate(counts) if i != z).count(4) == 1


def test_tm_criterion_families_fit_at_arity_11():
    # the second family of the desk-scale comparison needs 2 + 9 coordinates
    S = catalog.get("NIL3")
    A = t_m(S, "[3,6,9]", 2, 11)
    B = t_m(S, "[6,9,12]", 2, 11)
    for fam in (A, B):
        T = fam.truncation
        for t, lab in fam.labels.items():
            if lab[0] == "sigma" and lab[1] <= 2:
                assert oracles.divisor_count(T.members, T.mul, t) == tm_divisor_formula(fam, lab[1], lab[2])
    assert len(A.truncation) <= 40 and len(B.truncation) <= 40
    cert = distinguish(A.truncation, B.truncation)
    assert cert.distinguished and cert.kind == "divisor-spectrum"
    assert are_isomorphic(A.truncation.as_semigroup(), B.truncation.as_semigroup(),
                          budget=10**7) is None


def test_tm_rejects():
    S = catalog.get("NIL3")
    with pytest.raises(PreconditionError):
        t_m(S, "[6,9,12]", 2, 10)          # arity too small
    with pytest.raises(PreconditionError):
        t_m(S, "[4,8]", 1, 6)              # not multiples of |S|
    with pytest.raises(PreconditionError):
        t_m(catalog.get("N3"), "3k", 1, 4)
    assert len(t_m(S, "[4,8]", 1, 6, check_admissible=False).truncation) > 0


# ---------------------------------------------------------------- W_M


def test_choose_xg_examples():
    G = catalog.get("GN3")
    w = choose_xg(G)
    assert [G.elements[v] for v in (w.x, w.x_under, w.g)] == ["a", "e", "g"]
    assert power_identity_holds(G, w)
    Z = catalog.get("Z2xN2")
    w = choose_xg(Z)
    assert w.x not in w.kernel and w.x_under in w.kernel and w.g != w.x_under
    assert power_identity_holds(Z, w)
    with pytest.raises(PreconditionError):
        choose_xg(catalog.get("Z3"))


def test_wm_gn3_example():
    S = catalog.get("GN3")
    fam = w_m(S, ">=4", 1, 5)
    T = fam.truncation
    image = wm_root_image(fam, 1)
    assert [S.elements[v] for v in image] == ["g", "e", "e", "e", "e"]
    for q in range(1, 5):
        u = fam.member("U", 1, q)
        assert oracles.pointwise(S.rows, oracles.pointwise(S.rows, u, u), u) == image
    roots = root_spectrum(T, 3)
    assert roots[image] == 4
    for s in range(S.order):
        assert sum(1 for t in T if t == (s,) * 5) == 1
    assert max(c for t, c in roots.items() if t not in {wm_root_image(fam, 1)}) <= S.order


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(4, 7), min_size=1, max_size=2, unique=True))
def test_wm_roots_recover_m(ms):
    ms = sorted(ms)
    S = catalog.get("GN3")
    p_count = len(ms)
    arity = max(p + m for p, m in enumerate(ms, start=1))
    text = "[" + ",".join(map(str, ms)) + "]"
    fam = w_m(S, text, p_count, arity)
    counts = root_spectrum(fam.truncation, 3)
    assert {c for c in counts.values() if c > S.order} == set(ms)


def test_wm_z2xn2():
    S = catalog.get("Z2xN2")
    fam = w_m(S, "[5,6]", 2, 8)
    counts = root_spectrum(fam.truncation, 3)
    assert {c for c in counts.values() if c > S.order} == {5, 6}


def test_wm_rejects():
    S = catalog.get("GN3")
    with pytest.raises(PreconditionError):
        w_m(S, "[3,5]", 2, 8)              # 3 <= |S|
    with pytest.raises(PreconditionError):
        w_m(S, "[4,5]", 2, 6)              # 2 + 5 > 6
    with pytest.raises(PreconditionError):
        w_m(catalog.get("NIL3"), ">=4", 1, 5)
