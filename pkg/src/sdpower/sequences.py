"""Exact arithmetic on eventually periodic sequences over a finite semigroup.

An ``EpSeq`` is a finite preperiod followed by a period repeated forever.
Values are kept in canonical form (primitive period, shortest preperiod),
so equality and hashing agree with equality of the infinite sequences.
"""

from __future__ import annotations

from math import lcm

from .errors import PreconditionError, SemigroupError
from .structure import is_semilattice

PERIOD_CAP = 2 ** 16


def _primitive_root(word):
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def canonical(pre, per):
    pre, per = tuple(pre), tuple(per)
    if not per:
        raise PreconditionError("the period must be non-empty")
    per = _primitive_root(per)
    while pre and pre[-1] == per[-1]:
        per = per[-1:] + per[:-1]
        pre = pre[:-1]
    return pre, per


class EpSeq:
    __slots__ = ("base", "pre", "per")

    def __init__(self, base, pre, per):
        pre, per = canonical(pre, per)
        if len(per) > PERIOD_CAP:
            raise SemigroupError(f"period length {len(per)} exceeds cap {PERIOD_CAP}")
        n = base.order
        if any(not 0 <= v < n for v in pre + per):
            raise PreconditionError("entries must be element indices of the base")
        self.base = base
        self.pre = pre
        self.per = per

    @classmethod
    def recurring(cls, base, word):
        return cls(base, (), word)

    @classmethod
    def constant(cls, base, s):
        return cls(base, (), (s,))

    @property
    def is_recurring(self):
        return not self.pre

    def __getitem__(self, i):
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def __eq__(self, other):
        if not isinstance(other, EpSeq):
            return NotImplemented
        return self.pre == other.pre and self.per == other.per and self.base == other.base

    def __hash__(self):
        return hash((self.pre, self.per))

    def __repr__(self):
        return f"EpSeq({format_epseq(self)!r})"

    def __mul__(self, other):
        return ep_product(self, other)

    def __le__(self, other):
        return ep_leq(self, other)

    def __lt__(self, other):
        return ep_leq(self, other) and self != other

    def power(self, k):
        acc = self
        for _ in range(k - 1):
            acc = ep_product(acc, self)
        return acc


def ep_product(a, b):
    if a.base != b.base:
        raise PreconditionError("sequences live over different base semigroups")
    start = max(len(a.pre), len(b.pre))
    period = lcm(len(a.per), len(b.per))
    if period > PERIOD_CAP:
        raise SemigroupError(f"period length {period} exceeds cap {PERIOD_CAP}")
    rows = a.base.rows
    word = [rows[a[i]][b[i]] for i in range(start + period)]
    return EpSeq(a.base, word[:start], word[start:])


def ep_leq(a, b):
    if not is_semilattice(a.base):
        raise PreconditionError("the componentwise order needs a semilattice base")
    return ep_product(a, b) == a


def truncate(a, n):
    if n < 1:
        raise PreconditionError("truncation length must be positive")
    return tuple(a[i] for i in range(n))


def agreement_window(a, b):
    """Prefix length on which agreement implies equality of the sequences."""
    return len(a.pre) + len(b.pre) + lcm(len(a.per), len(b.per))


def ep_phi(a, decomposition, target=None):
    """Componentwise image under phi.

    With ``target`` (a SemilatticeOrder) the result lives over E(S) with
    E-indices; otherwise it stays over the base with idempotent entries.
    """
    phi = decomposition.phi
    if target is None:
        return EpSeq(a.base, [phi[v] for v in a.pre], [phi[v] for v in a.per])
    back = {s: k for k, s in enumerate(target.embedding)}
    return EpSeq(target.base, [back[phi[v]] for v in a.pre], [back[phi[v]] for v in a.per])


def format_epseq(a):
    names = a.base.elements
    return ",".join(names[v] for v in a.pre) + "|" + ",".join(names[v] for v in a.per)


def parse_epseq(base, text):
    if text.count("|") != 1:
        raise PreconditionError(f"expected 'pre|period', got {text!r}")
    pre_txt, per_txt = text.split("|")

    def names(part):
        part = part.strip()
        return [base.index(p.strip()) for p in part.split(",")] if part else []

    return EpSeq(base, names(pre_txt), names(per_txt))
