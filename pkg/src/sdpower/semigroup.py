"""Cayley-table semigroups, direct powers and finite tuple algebras."""

from __future__ import annotations

import json
import math
from itertools import product

import numpy as np

from .errors import (
    AssociativityError,
    NotClosedError,
    ParseError,
    PreconditionError,
    SizeCapError,
)

DEFAULT_SIZE_CAP = 4096

# bounds the (chunk, n, n) temporary used while checking associativity
_ASSOC_CHUNK_CELLS = 4_000_000


def first_associativity_failure(table):
    """Return the lexicographically first (i, j, k) with (ij)k != i(jk), or None."""
    t = np.asarray(table)
    n = t.shape[0]
    step = max(1, _ASSOC_CHUNK_CELLS // max(1, n * n))
    for start in range(0, n, step):
        block = t[start:start + step]
        left = t[block]              # (ij)k  -> shape (b, n, n)
        right = block[:, t]          # i(jk)
        bad = np.argwhere(left != right)
        if bad.size:
            i, j, k = bad[0]
            return (int(i) + start, int(j), int(k))
    return None


class FiniteSemigroup:
    """A finite semigroup given by element names and a Cayley table.

    ``table[i][j]`` is the index of the product of element ``i`` (left)
    and element ``j`` (right).  Instances are immutable.
    """

    __slots__ = ("elements", "table", "rows", "_index", "_cache")

    def __init__(self, elements, table, validate=True):
        elements = tuple(str(e) for e in elements)
        arr = np.array(table, dtype=np.int64)
        n = len(elements)
        if n < 1:
            raise ParseError("a semigroup needs at least one element")
        if len(set(elements)) != n:
            raise ParseError("element names must be unique")
        if arr.shape != (n, n):
            raise ParseError(f"table has shape {arr.shape}, expected ({n}, {n})")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise ParseError(
                f"table entry {int(arr[tuple(bad)])} at row {bad[0]}, column {bad[1]} "
                f"is not an index in 0..{n - 1}"
            )
        if validate:
            failure = first_associativity_failure(arr)
            if failure is not None:
                raise AssociativityError(failure)
        arr.setflags(write=False)
        self.elements = elements
        self.table = arr
        self.rows = tuple(tuple(int(v) for v in row) for row in arr)
        self._index = {e: i for i, e in enumerate(elements)}
        self._cache = {}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order}, elements={list(self.elements)[:6]}{'...' if self.order > 6 else ''})"

    def __eq__(self, other):
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return self.elements == other.elements and self.rows == other.rows

    def __hash__(self):
        return hash((self.elements, self.rows))

    def index(self, name):
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.order:
                raise PreconditionError(f"no element with index {name}")
            return int(name)
        try:
            return self._index[str(name)]
        except KeyError:
            raise PreconditionError(f"no element named {name!r}") from None

    def mul(self, i, j):
        return self.rows[i][j]

    def product_of(self, word):
        """Left-to-right product of a non-empty sequence of indices."""
        it = iter(word)
        acc = next(it)
        for w in it:
            acc = self.rows[acc][w]
        return acc

    def power(self, i, k):
        if k < 1:
            raise PreconditionError("powers start at 1")
        acc = i
        for _ in range(k - 1):
            acc = self.rows[acc][i]
        return acc

    def monogenic(self, i):
        """Index and period of the monogenic subsemigroup generated by ``i``.

        Floyd cycle detection on s, s^2, s^3, ...; the index is the first
        exponent that lies on the cycle.
        """
        rows = self.rows

        def step(v):
            return rows[v][i]

        tortoise, hare = step(i), step(step(i))
        while tortoise != hare:
            tortoise, hare = step(tortoise), step(step(hare))
        mu = 0
        tortoise = i
        while tortoise != hare:
            tortoise, hare = step(tortoise), step(hare)
            mu += 1
        period = 1
        hare = step(tortoise)
        while tortoise != hare:
            hare = step(hare)
            period += 1
        return mu + 1, period

    def idempotent_power(self, i):
        """The unique idempotent among the powers of ``i``."""
        index, period = self.monogenic(i)
        # s^k is idempotent for the multiple of the period that is >= index
        k = period * math.ceil(index / period)
        return self.power(i, k)

    def is_commutative(self):
        return bool(np.array_equal(self.table, self.table.T))

    def is_idempotent(self, i):
        return self.rows[i][i] == i

    def to_document(self):
        return {"elements": list(self.elements), "table": [list(r) for r in self.rows]}


def is_commutative(S):
    return S.is_commutative()


# ----------------------------------------------------------------------------
# parsing and printing


def _parse_text(text):
    names = None
    rows = []
    n = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("names:"):
                names = body[len("names:"):].split()
            continue
        try:
            values = [int(v) for v in line.split()]
        except ValueError:
            raise ParseError(f"cannot read integers from line {raw!r}") from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise ParseError("first line of the text format must be the order n >= 1")
            n = values[0]
            continue
        rows.append(values)
    if n is None:
        raise ParseError("empty document")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n} rows of {n} entries (non-square table)")
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n:
        raise ParseError(f"names line lists {len(names)} names for order {n}")
    return names, rows


def parse_semigroup(doc, validate=True):
    """Build a validated semigroup from a Cayley document.

    ``doc`` may be a mapping ``{"elements": [...], "table": [[...]]}``, its
    JSON text, or the compact text format (order on the first line, then
    the rows, optional ``# names: a b c`` comment).
    """
    if isinstance(doc, (bytes, bytearray)):
        doc = doc.decode()
    if isinstance(doc, str):
        stripped = doc.lstrip()
        if stripped.startswith("{"):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}") from None
        else:
            names, rows = _parse_text(doc)
            return FiniteSemigroup(names, rows, validate=validate)
    if not isinstance(doc, dict) or "table" not in doc:
        raise ParseError("document must have a 'table' key")
    table = doc["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ParseError("table must be a list of rows")
    n = len(table)
    if any(len(r) != n for r in table):
        raise ParseError("non-square table")
    for r in table:
        for v in r:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"table entry {v!r} is not an integer index")
    elements = doc.get("elements")
    if elements is None:
        elements = [str(i) for i in range(n)]
    if len(elements) != n:
        raise ParseError(f"{len(elements)} element names for a {n}x{n} table")
    return FiniteSemigroup(elements, table, validate=validate)


def to_json(S, indent=None):
    return json.dumps(S.to_document(), indent=indent)


def to_text(S):
    lines = [str(S.order)]
    if S.elements != tuple(str(i) for i in range(S.order)):
        lines.append("# names: " + " ".join(S.elements))
    lines.extend(" ".join(str(v) for v in row) for row in S.rows)
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# products, powers, subsemigroups


def tuple_name(S, t):
    return "(" + ",".join(S.elements[c] for c in t) + ")"


def direct_power(S, n, cap=DEFAULT_SIZE_CAP):
    if n < 1:
        raise PreconditionError("arity must be positive")
    size = S.order ** n
    if size > cap:
        raise SizeCapError(f"|S|^n = {size} exceeds the size cap {cap}")
    tuples = list(product(range(S.order), repeat=n))
    coords = np.array(tuples, dtype=np.int64).reshape(size, n)
    prod = S.table[coords[:, None, :], coords[None, :, :]]      # (size, size, n)
    # tuples are in lexicographic order, so mixed-radix encoding is the index
    weights = S.order ** np.arange(n - 1, -1, -1, dtype=np.int64)
    table = prod @ weights
    names = [tuple_name(S, t) for t in tuples]
    return FiniteSemigroup(names, table, validate=False)


def direct_product(A, B, cap=DEFAULT_SIZE_CAP):
    size = A.order * B.order
    if size > cap:
        raise SizeCapError(f"|A||B| = {size} exceeds the size cap {cap}")
    pairs = list(product(range(A.order), range(B.order)))
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    table = A.table[a[:, None], a[None, :]] * B.order + B.table[b[:, None], b[None, :]]
    names = [f"({A.elements[i]},{B.elements[j]})" for i, j in pairs]
    return FiniteSemigroup(names, table, validate=False)


def closure(S, seed):
    """Smallest product-closed subset of S containing ``seed`` (as a frozenset of indices)."""
    rows = S.rows
    current = {S.index(s) for s in seed}
    frontier = list(current)
    while frontier:
        new = []
        members = list(current)
        for a in frontier:
            for b in members:
                for c in (rows[a][b], rows[b][a]):
                    if c not in current:
                        current.add(c)
                        new.append(c)
        # products among the fresh elements are covered on the next pass
        frontier = new
    return frozenset(current)


def subsemigroup(S, subset):
    """Restrict S to a product-closed subset; returns (semigroup, sorted index list)."""
    idx = sorted(S.index(s) for s in subset)
    if not idx:
        raise PreconditionError("empty subset")
    pos = {v: k for k, v in enumerate(idx)}
    try:
        table = [[pos[S.rows[a][b]] for b in idx] for a in idx]
    except KeyError:
        raise NotClosedError("subset is not closed under the product") from None
    return FiniteSemigroup([S.elements[i] for i in idx], table, validate=False), idx


def adjoin_identity(S):
    """S^1: S with a fresh identity appended as the last element."""
    n = S.order
    table = [list(r) + [i] for i, r in enumerate(S.rows)]
    table.append(list(range(n)) + [n])
    name = "1"
    while name in S.elements:
        name += "'"
    return FiniteSemigroup(list(S.elements) + [name], table, validate=False)


def relabel(S, perm):
    """Isomorphic copy of S in which old element ``i`` becomes new element ``perm[i]``."""
    n = S.order
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise PreconditionError("perm must be a permutation of the indices")
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    table = [[perm[S.rows[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    names = [S.elements[inv[a]] for a in range(n)]
    return FiniteSemigroup(names, table, validate=False)


# ----------------------------------------------------------------------------
# tuple algebras


class TupleAlgebra:
    """A finite set of n-tuples over a base semigroup.

    Members are stored sorted; ``closed`` records whether the set is closed
    under the componentwise product and ``subdirect_coords[c]`` whether the
    projection onto coordinate ``c`` is onto.
    """

    def __init__(self, base, members, arity=None):
        members = sorted({tuple(int(v) for v in t) for t in members})
        if arity is None:
            if not members:
                raise PreconditionError("arity is required for an empty algebra")
            arity = len(members[0])
        if any(len(t) != arity for t in members):
            raise PreconditionError("all members must have the same arity")
        if any(not 0 <= v < base.order for t in members for v in t):
            raise PreconditionError("member entries must be element indices of the base")
        self.base = base
        self.arity = arity
        self.members = tuple(members)
        self.index = {t: i for i, t in enumerate(self.members)}
        self._coords = np.array(self.members, dtype=np.int64).reshape(len(self.members), arity)
        self._table = None
        self._sg = None
        self.closed = self._check_closed()
        full = set(range(base.order))
        self.subdirect_coords = tuple(
            {t[c] for t in self.members} == full for c in range(arity)
        )

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, t):
        return tuple(t) in self.index

    def __eq__(self, other):
        if not isinstance(other, TupleAlgebra):
            return NotImplemented
        return self.base == other.base and self.arity == other.arity and self.members == other.members

    def __hash__(self):
        return hash((self.base, self.arity, self.members))

    def __repr__(self):
        return f"TupleAlgebra(arity={self.arity}, size={len(self)}, closed={self.closed})"

    def mul(self, s, t):
        rows = self.base.rows
        return tuple(rows[a][b] for a, b in zip(s, t))

    def _products(self):
        c = self._coords
        return self.base.table[c[:, None, :], c[None, :, :]]

    def _check_closed(self):
        k = len(self.members)
        if k == 0:
            return True
        index = self.index
        table = np.empty((k, k), dtype=np.int64)
        # row by row keeps memory at k * arity per step
        for i in range(k):
            row = self.base.table[self._coords[i][None, :], self._coords]
            for j, t in enumerate(map(tuple, row.tolist())):
                pos = index.get(t)
                if pos is None:
                    return False
                table[i, j] = pos
        table.setflags(write=False)
        self._table = table
        return True

    @property
    def table(self):
        if not self.closed:
            raise NotClosedError("tuple algebra is not closed under the product")
        return self._table

    def names(self):
        return [tuple_name(self.base, t) for t in self.members]

    def as_semigroup(self):
        """The algebra as an abstract Cayley-table semigroup (members in sorted order)."""
        if self._sg is None:
            self._sg = FiniteSemigroup(self.names(), self.table, validate=False)
        return self._sg

    def zero_tuple(self):
        """The all-zero tuple if the base has a zero and it is a member, else None."""
        z = zero_of(self.base)
        if z is None:
            return None
        t = (z,) * self.arity
        return t if t in self.index else None

    def to_document(self):
        return {
            "base": self.base.to_document(),
            "arity": self.arity,
            "members": [list(t) for t in self.members],
        }


def tuple_algebra_from_document(doc):
    base = parse_semigroup(doc["base"])
    return TupleAlgebra(base, [tuple(t) for t in doc["members"]], arity=doc["arity"])


def generate(base, seeds, arity=None):
    """Closure of a set of tuples under the componentwise product."""
    seeds = [tuple(t) for t in seeds]
    if arity is None:
        arity = len(seeds[0])
    rows = base.rows
    current = set(seeds)
    frontier = list(current)
    while frontier:
        members = list(current)
        new = []
        for a in frontier:
            for b in members:
                for c in (tuple(rows[x][y] for x, y in zip(a, b)), tuple(rows[y][x] for x, y in zip(a, b))):
                    if c not in current:
                        current.add(c)
                        new.append(c)
        frontier = new
    return TupleAlgebra(base, current, arity=arity)


def is_subdirect(T):
    if not T.closed:
        raise NotClosedError("is_subdirect requires a closed tuple algebra")
    return all(T.subdirect_coords)


def zero_of(S):
    """Index of the zero (two-sided absorbing element) of S, or None."""
    if "zero" not in S._cache:
        t = S.table
        n = S.order
        z = None
        for i in range(n):
            if (t[i] == i).all() and (t[:, i] == i).all():
                z = i
                break
        S._cache["zero"] = z
    return S._cache["zero"]
