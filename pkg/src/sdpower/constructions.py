"""Witness families of subdirect powers, built exactly and truncated to finite arity."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm, prod

from .errors import NotClosedError, PreconditionError, SizeCapError
from .semigroup import DEFAULT_SIZE_CAP, TupleAlgebra, is_subdirect, zero_of
from .sequences import EpSeq, ep_leq, truncate
from .structure import (
    SemilatticeOrder,
    archimedean,
    idempotent_semilattice,
    is_semilattice,
    minimal_ideal,
    minimal_nonzero,
    nilpotency_class,
    principal_filter,
    rees_quotient,
)
from .iso import divisibility_matrix


# ----------------------------------------------------------------------------
# index sets M


@dataclass(frozen=True)
class MSpec:
    """A strictly increasing infinite set of positive integers.

    kinds: ``multiples`` (n, 2n, 3n, ...), ``offset`` (n, n+1, ...) and
    ``explicit`` (a listed prefix continued with a fixed stride).
    """

    kind: str
    base: int = 0
    prefix: tuple = ()
    stride: int = 1

    def __post_init__(self):
        if self.kind not in ("multiples", "offset", "explicit"):
            raise PreconditionError(f"unknown M kind {self.kind!r}")
        if self.kind in ("multiples", "offset") and self.base < 1:
            raise PreconditionError("M base must be a positive integer")
        if self.kind == "explicit":
            if not self.prefix or self.prefix[0] < 1:
                raise PreconditionError("explicit M needs a non-empty positive prefix")
            if any(b <= a for a, b in zip(self.prefix, self.prefix[1:])):
                raise PreconditionError("explicit M prefix must be strictly increasing")
            if self.stride < 1:
                raise PreconditionError("M stride must be positive")

    def values(self, count):
        if self.kind == "multiples":
            return [self.base * (k + 1) for k in range(count)]
        if self.kind == "offset":
            return [self.base + k for k in range(count)]
        out = list(self.prefix[:count])
        while len(out) < count:
            out.append(out[-1] + self.stride)
        return out

    def within_multiples_of(self, n):
        """The whole infinite M lies in {n, 2n, 3n, ...}."""
        if self.kind == "multiples":
            return self.base % n == 0
        if self.kind == "offset":
            return n == 1
        return all(v % n == 0 for v in self.prefix) and self.stride % n == 0

    def above(self, n):
        """The whole infinite M lies in {n+1, n+2, ...}."""
        return self.values(1)[0] > n

    def __str__(self):
        if self.kind == "multiples":
            return f"{self.base}k"
        if self.kind == "offset":
            return f">={self.base}"
        return "[" + ",".join(map(str, self.prefix)) + f";+{self.stride}]"


_MULT = re.compile(r"^\s*(\d+)\s*k\s*$")
_OFFS = re.compile(r"^\s*>=\s*(\d+)\s*$")
_EXPL = re.compile(r"^\s*\[\s*([\d\s,]+?)\s*(?:;\s*\+\s*(\d+)\s*)?\]\s*$")


def parse_mspec(text):
    """Read ``3k``, ``>=4`` or ``[3,9,12;+3]``.

    Without ``;+d`` the prefix continues with its last gap (+1 for a
    single value).
    """
    if isinstance(text, MSpec):
        return text
    m = _MULT.match(text)
    if m:
        return MSpec("multiples", base=int(m.group(1)))
    m = _OFFS.match(text)
    if m:
        return MSpec("offset", base=int(m.group(1)))
    m = _EXPL.match(text)
    if m:
        prefix = tuple(int(v) for v in m.group(1).replace(" ", "").split(",") if v)
        if m.group(2):
            stride = int(m.group(2))
        else:
            stride = prefix[-1] - prefix[-2] if len(prefix) > 1 else 1
        return MSpec("explicit", prefix=prefix, stride=stride)
    raise PreconditionError(f"cannot read M literal {text!r}")


# ----------------------------------------------------------------------------
# witness families


@dataclass
class WitnessFamily:
    label: str
    base: object
    generators: list
    truncation: TupleAlgebra
    certificate_hooks: tuple
    labels: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def member(self, *key):
        for t, lab in self.labels.items():
            if lab == key:
                return t
        raise KeyError(key)

    def to_document(self, certificate=None):
        T = self.truncation
        return {
            "label": self.label,
            "base": self.base.to_document(),
            "arity": T.arity,
            "members": [list(t) for t in T.members],
            "params": self.params,
            "certificate": certificate
            if certificate is not None
            else {"hooks": list(self.certificate_hooks)},
        }


# ----------------------------------------------------------------------------
# chains of recurring elements over L2


def _two_element_semilattice(base):
    if base.order != 2 or not is_semilattice(base):
        raise PreconditionError("expected a two-element semilattice")
    lo = zero_of(base)
    return lo, 1 - lo


def between(alpha, beta):
    """A recurring element strictly between two recurring elements of L2^N."""
    lo, hi = _two_element_semilattice(alpha.base)
    if not (alpha.is_recurring and beta.is_recurring):
        raise PreconditionError("between() takes recurring sequences")
    if alpha == beta or not ep_leq(alpha, beta):
        raise PreconditionError("between() needs alpha < beta strictly")
    k = lcm(len(alpha.per), len(beta.per))
    a = alpha.per * (k // len(alpha.per))
    b = beta.per * (k // len(beta.per))
    j = next(i for i in range(k) if a[i] == lo and b[i] == hi)
    raised = a[:j] + (hi,) + a[j + 1:]
    return EpSeq.recurring(alpha.base, a + raised)


def density(seq, one):
    return Fraction(sum(1 for v in seq.per if v == one), len(seq.per))


def build_chain(length, base=None):
    """Strictly increasing chain 0 = c1 < ... < c_length = 1 of recurring elements.

    Each step fills the widest gap (difference of densities of 1s), the
    leftmost one on ties.
    """
    if length < 2:
        raise PreconditionError("chain length must be >= 2")
    if base is None:
        from .catalog import chain as chain_semilattice
        base = chain_semilattice(2)
    lo, hi = _two_element_semilattice(base)
    out = [EpSeq.constant(base, lo), EpSeq.constant(base, hi)]
    dens = [Fraction(0), Fraction(1)]
    while len(out) < length:
        gaps = [dens[i + 1] - dens[i] for i in range(len(out) - 1)]
        i = gaps.index(max(gaps))
        mid = between(out[i], out[i + 1])
        out.insert(i + 1, mid)
        dens.insert(i + 1, density(mid, hi))
    return out


def chain_algebra(S, chain, top=None, arity=None):
    """The image of an L2 chain in S^n, mapping 0 to the zero of S and 1 to ``top``.

    By default the arity is the lcm of the periods, on which distinct
    recurring elements stay distinct.
    """
    lo, hi = _two_element_semilattice(chain[0].base)
    z = zero_of(S)
    if z is None:
        raise PreconditionError("target semigroup needs a zero")
    if top is None:
        top = minimal_nonzero(SemilatticeOrder(S))
    if arity is None:
        arity = lcm(*(len(c.per) for c in chain))
    image = {lo: z, hi: top}
    members = [tuple(image[v] for v in truncate(c, arity)) for c in chain]
    return TupleAlgebra(S, members, arity=arity)


# ----------------------------------------------------------------------------
# inserting a chain into a semilattice


def tilde(S, P, e=None):
    """P together with the diagonal copy of S.

    ``P`` is a closed algebra over S with entries in {0, e} containing the
    all-0 and all-e tuples, where e is a minimal non-zero element.
    """
    if not is_semilattice(S) or S.order < 2:
        raise PreconditionError("tilde needs a non-trivial semilattice")
    order = SemilatticeOrder(S)
    z = order.zero
    if e is None:
        e = minimal_nonzero(order)
    elif order.principal_ideal(e) != {z, e} or e == z:
        raise PreconditionError("e must be a minimal non-zero element")
    if P.base != S:
        raise PreconditionError("P must be an algebra over S")
    if not P.closed:
        raise NotClosedError("P must be closed")
    if any(v not in (z, e) for t in P for v in t):
        raise PreconditionError("P entries must lie in {0, e}")
    n = P.arity
    if (z,) * n not in P or (e,) * n not in P:
        raise PreconditionError("P must contain the all-0 and all-e tuples")
    members = set(P.members) | {(s,) * n for s in range(S.order)}
    T = TupleAlgebra(S, members, arity=n)
    if not T.closed or not is_subdirect(T):
        raise AssertionError("P-tilde must be a closed subdirect power")
    return T


def tilde_discriminator(S, P, Pt, e=None):
    """Members of P-tilde whose principal ideal is P and whose filter has |{s >= e}| elements."""
    order = SemilatticeOrder(S)
    if e is None:
        e = minimal_nonzero(order)
    target = len(principal_filter(order, e))
    P_set = set(P.members)
    hits = []
    for s in Pt.members:
        down = {t for t in Pt.members if Pt.mul(t, s) == t}
        up = [t for t in Pt.members if Pt.mul(s, t) == s]
        if down == P_set and len(up) == target:
            hits.append(s)
    return hits


# ----------------------------------------------------------------------------
# hat construction over archimedean components


def _idempotent_tuples(S, U):
    E = idempotent_semilattice(S)
    if U.base == S:
        if any(S.rows[v][v] != v for t in U for v in t):
            raise PreconditionError("U entries must be idempotents of S")
        return [tuple(t) for t in U.members]
    if U.base == E.base:
        emb = E.embedding
        return [tuple(emb[v] for v in t) for t in U.members]
    raise PreconditionError("U must be an algebra over E(S) or over S with idempotent entries")


def hat_size(S, U):
    dec = archimedean(S)
    size = {e: len(c) for e, c in zip(dec.idempotent_of_component, dec.components)}
    return sum(prod(size[v] for v in t) for t in _idempotent_tuples(S, U))


def hat(S, U, cap=DEFAULT_SIZE_CAP):
    """All tuples of S whose componentwise phi-image lies in U."""
    if not S.is_commutative():
        raise PreconditionError("hat needs a commutative semigroup")
    if not U.closed:
        raise NotClosedError("U must be closed")
    tuples = _idempotent_tuples(S, U)
    if hat_size(S, U) > cap:
        raise SizeCapError(f"hat would have {hat_size(S, U)} elements, cap {cap}")
    dec = archimedean(S)
    comp = dict(zip(dec.idempotent_of_component, dec.components))
    members = set()
    for u in tuples:
        members.update(product(*(comp[v] for v in u)))
    return TupleAlgebra(S, members, arity=U.arity)


# ----------------------------------------------------------------------------
# nilpotent semigroups of class > 2


def choose_xy(S):
    """First non-zero product x of k-1 factors and y, the product of its first k-2."""
    k = nilpotency_class(S)
    if k is None or k <= 2:
        raise PreconditionError("choose_xy needs a nilpotent semigroup of class > 2")
    z = zero_of(S)
    for word in product(range(S.order), repeat=k - 1):
        x = S.product_of(word)
        if x != z:
            return x, S.product_of(word[:-1])
    raise AssertionError("class computation and witness search disagree")


def left_divisors(S, s):
    D = divisibility_matrix(S)
    return frozenset(int(t) for t in D[:, s].nonzero()[0])


def t_m(S, M, index_count, arity, check_admissible=True):
    """Finite truncation of the nilpotent witness family for the index set M."""
    M = parse_mspec(M)
    n_S = S.order
    k = nilpotency_class(S)
    if k is None or k <= 2:
        raise PreconditionError("t_m needs a nilpotent semigroup of class > 2")
    if index_count < 1:
        raise PreconditionError("index count must be >= 1")
    ms = M.values(index_count)
    if check_admissible and any(m % n_S for m in ms):
        raise PreconditionError(f"M values {ms} are not all multiples of |S| = {n_S}")
    need = max(i + 1 + m for i, m in enumerate(ms))
    if arity < need:
        raise PreconditionError(
            f"arity {arity} too small: chi supports need {need} coordinates"
        )
    x, y = choose_xy(S)
    z = zero_of(S)
    zero = (z,) * arity
    labels = {zero: ("zero",)}
    gens = []

    def sigma(i, s):
        return EpSeq(S, (z,) * (i - 1) + (s,), (z,))

    def chi(i, j):
        return EpSeq(S, (z,) * (i - 1) + (y,) + (x,) * j, (z,))

    for i in range(1, arity + 1):
        for s in range(S.order):
            if s == z:
                continue
            g = sigma(i, s)
            gens.append(g)
            labels[truncate(g, arity)] = ("sigma", i, s)
    for i, m in enumerate(ms, start=1):
        for j in range(1, m + 1):
            g = chi(i, j)
            gens.append(g)
            labels[truncate(g, arity)] = ("chi", i, j)
    T = TupleAlgebra(S, labels, arity=arity)
    fam = WitnessFamily(
        label=f"T_M[{M}]",
        base=S,
        generators=gens,
        truncation=T,
        certificate_hooks=("divisor-spectrum",),
        labels=labels,
        params={"construction": "tm", "M": str(M), "m": ms, "index_count": index_count,
                "arity": arity, "x": S.elements[x], "y": S.elements[y]},
    )
    bad = tm_product_violations(fam)
    if bad:
        raise AssertionError(f"T_M products deviate from the expected table: {bad[:3]}")
    if not T.closed or not is_subdirect(T):
        raise AssertionError("T_M truncation must be a closed subdirect power")
    return fam


def _tm_expected(S, x, y, z, arity, la, lb):
    """Expected product of two labelled T_M members, as a tuple."""
    zero = (z,) * arity
    if la[0] == "zero" or lb[0] == "zero" or la[1] != lb[1]:
        return zero
    i = la[1]
    left = la[2] if la[0] == "sigma" else y
    right = lb[2] if lb[0] == "sigma" else y
    v = S.rows[left][right]
    return zero[: i - 1] + (v,) + zero[i:]


def tm_product_violations(fam):
    S, T = fam.base, fam.truncation
    x, y = S.index(fam.params["x"]), S.index(fam.params["y"])
    z = zero_of(S)
    bad = []
    for a, la in fam.labels.items():
        for b, lb in fam.labels.items():
            want = _tm_expected(S, x, y, z, T.arity, la, lb)
            if T.mul(a, b) != want:
                bad.append((la, lb))
    return bad


def tm_divisor_formula(fam, i, s):
    """Divisor count of sigma(i, s) predicted from Div_S(s), y and m_i."""
    S = fam.base
    y = S.index(fam.params["y"])
    div = left_divisors(S, s)
    ms = fam.params["m"]
    extra = ms[i - 1] if (i <= len(ms) and y in div) else 0
    return len(div) + extra


# ----------------------------------------------------------------------------
# ideal extensions of a group by a nilpotent semigroup


@dataclass(frozen=True)
class ExtensionWitness:
    kernel: frozenset
    identity: int
    x: int
    x_under: int
    g: int
    group_order: int


def choose_xg(S):
    K, is_grp = minimal_ideal(S)
    if not is_grp or len(K) < 2:
        raise PreconditionError("choose_xg needs a non-trivial group as minimal ideal")
    Q = rees_quotient(S, K)
    k = nilpotency_class(Q)
    if k is None or k < 2:
        raise PreconditionError("choose_xg needs a non-trivial nilpotent quotient")
    e = next(i for i in K if S.rows[i][i] == i)
    for word in product(range(S.order), repeat=k - 1):
        x = S.product_of(word)
        if x not in K:
            break
    else:
        raise AssertionError("quotient class and witness search disagree")
    x_under = S.rows[e][x]
    g = min(h for h in K if h != x_under)
    return ExtensionWitness(frozenset(K), e, x, x_under, g, len(K))


def power_identity_holds(S, w):
    """x^(m+1) equals (ex)^(m+1) with m the order of the kernel group."""
    m = w.group_order
    return S.power(w.x, m + 1) == S.power(w.x_under, m + 1)


def w_m(S, M, p_count, arity, cap=DEFAULT_SIZE_CAP, check_admissible=True):
    """Finite truncation of the group-extension witness family for M."""
    M = parse_mspec(M)
    n_S = S.order
    w = choose_xg(S)
    if p_count < 1:
        raise PreconditionError("P count must be >= 1")
    ms = M.values(p_count)
    if check_admissible and ms[0] <= n_S:
        raise PreconditionError(f"M values {ms} must all exceed |S| = {n_S}")
    need = max(p + m for p, m in enumerate(ms, start=1))
    if arity < need:
        raise PreconditionError(f"arity {arity} too small: U_M members need {need} coordinates")
    K = sorted(w.kernel)
    if len(K) ** arity > cap:
        raise SizeCapError(f"|G|^n = {len(K) ** arity} exceeds cap {cap}")
    labels = {t: ("G",) for t in product(K, repeat=arity)}
    gens = []
    for s in range(S.order):
        d = EpSeq.constant(S, s)
        gens.append(d)
        if s not in w.kernel:
            labels[truncate(d, arity)] = ("diag", s)
    for p, m in enumerate(ms, start=1):
        for q in range(1, m + 1):
            u = EpSeq(S, (w.identity,) * (p - 1) + (w.g,) + (w.x,) * q, (w.x_under,))
            gens.append(u)
            labels[truncate(u, arity)] = ("U", p, q)
    T = TupleAlgebra(S, labels, arity=arity)
    fam = WitnessFamily(
        label=f"W_M[{M}]",
        base=S,
        generators=gens,
        truncation=T,
        certificate_hooks=("root-spectrum",),
        labels=labels,
        params={"construction": "wm", "M": str(M), "m": ms, "p_count": p_count,
                "arity": arity, "x": S.elements[w.x], "x_under": S.elements[w.x_under],
                "g": S.elements[w.g], "e": S.elements[w.identity], "group_order": w.group_order},
    )
    bullets = wm_closure_bullets(fam)
    if not all(bullets.values()):
        raise AssertionError(f"W_M closure facts fail: {bullets}")
    if not T.closed or not is_subdirect(T):
        raise AssertionError("W_M truncation must be a closed subdirect power")
    return fam


def wm_closure_bullets(fam):
    """The four facts that make the truncation a subdirect power."""
    S, T = fam.base, fam.truncation
    n = T.arity
    G_part = [t for t, lab in fam.labels.items() if lab == ("G",)]
    G_set = set(G_part)
    diag = [(s,) * n for s in range(S.order)]
    U_part = [t for t, lab in fam.labels.items() if lab[0] == "U"]
    both = G_set | set(diag)
    everything = list(fam.labels)
    return {
        "G closed": all(T.mul(a, b) in G_set for a in G_part for b in G_part),
        "diagonal subdirect": all(T.mul(a, b) in set(diag) for a in diag for b in diag)
        and all(any(d[c] == s for d in diag) for c in range(n) for s in range(S.order)),
        "G and diagonal closed": all(T.mul(a, b) in both for a in both for b in both),
        "U products in G": all(
            T.mul(a, b) in G_set and T.mul(b, a) in G_set for a in U_part for b in everything
        ),
    }


def wm_root_image(fam, p):
    """The (m+1)-st power shared by the U_M members with first index p."""
    S = fam.base
    n = fam.truncation.arity
    e, g, xu = (S.index(fam.params[k]) for k in ("e", "g", "x_under"))
    return (e,) * (p - 1) + (g,) + (xu,) * (n - p)
