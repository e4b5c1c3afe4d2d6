"""Exhaustive census of subdirect subsemigroups of small direct powers."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .errors import SizeCapError
from .iso import are_isomorphic, fingerprint
from .semigroup import TupleAlgebra, parse_semigroup
from .certify import divisor_spectrum

DEFAULT_CENSUS_CAP = 16
CACHE_ENV = "SDPOWER_CACHE_DIR"


@dataclass
class CensusResult:
    base: object
    arity: int
    total: int
    classes: int
    representatives: list
    class_sizes: list = field(default_factory=list)
    wall_time: float = 0.0
    cached: bool = False

    def to_json(self):
        return {
            "base": self.base.to_document(),
            "arity": self.arity,
            "total": self.total,
            "classes": self.classes,
            "class_sizes": self.class_sizes,
            "representatives": [[list(t) for t in T.members] for T in self.representatives],
            "wall_time": self.wall_time,
        }

    @classmethod
    def from_json(cls, doc):
        base = parse_semigroup(doc["base"])
        reps = [TupleAlgebra(base, [tuple(t) for t in r], arity=doc["arity"]) for r in doc["representatives"]]
        return cls(base, doc["arity"], doc["total"], doc["classes"], reps,
                   doc.get("class_sizes", []), doc.get("wall_time", 0.0), cached=True)


def closed_subsets(mul, N):
    """All product-closed subsets of {0..N-1}, as bitmasks, in lectic order.

    ``mul[a][b]`` is the product of a and b.  Uses Ganter's next-closure
    enumeration with subsemigroup generation as the closure operator.
    """

    def close(mask):
        members = [i for i in range(N) if mask >> i & 1]
        frontier = list(members)
        while frontier:
            new = []
            for a in frontier:
                for b in members:
                    for c in (mul[a][b], mul[b][a]):
                        if not mask >> c & 1:
                            mask |= 1 << c
                            new.append(c)
            members.extend(new)
            frontier = new
        return mask

    full = (1 << N) - 1
    A = close(0)
    yield A
    while A != full:
        for i in range(N - 1, -1, -1):
            bit = 1 << i
            if A & bit:
                A &= ~bit
                continue
            B = close(A | bit)
            if not (B & ~A & (bit - 1)):
                A = B
                break
        yield A


def _cache_path(cache_dir, S, n):
    digest = hashlib.sha256(json.dumps(S.to_document(), sort_keys=True).encode()).hexdigest()
    return Path(cache_dir) / f"census_{digest[:24]}_n{n}.json"


def _atomic_write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp_", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def enumerate_subdirect(S, n, cap=DEFAULT_CENSUS_CAP, cache_dir=None, budget=10**6):
    """All subdirect subsemigroups of S^n, and one representative per isomorphism class."""
    N = S.order ** n
    if N > cap:
        raise SizeCapError(f"|S|^n = {N} exceeds the census cap {cap}")
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if cache_dir:
        path = _cache_path(cache_dir, S, n)
        if path.is_file():
            return CensusResult.from_json(json.loads(path.read_text()))
    start = time.perf_counter()
    tuples = list(product(range(S.order), repeat=n))
    index = {t: i for i, t in enumerate(tuples)}
    rows = S.rows
    mul = [[index[tuple(rows[x][y] for x, y in zip(a, b))] for b in tuples] for a in tuples]
    # coverage[c][s]: bitmask of tuples whose coordinate c equals s
    coverage = [[sum(1 << i for i, t in enumerate(tuples) if t[c] == s) for s in range(S.order)]
                for c in range(n)]
    found = []
    for mask in closed_subsets(mul, N):
        if all(mask & cov for covs in coverage for cov in covs):
            found.append(mask)

    buckets = {}
    reps, sizes = [], []
    for mask in found:
        T = TupleAlgebra(S, [tuples[i] for i in range(N) if mask >> i & 1], arity=n)
        A = T.as_semigroup()
        key = (fingerprint(A), divisor_spectrum(A))
        for k in buckets.get(key, []):
            if are_isomorphic(reps[k].as_semigroup(), A, budget=budget) is not None:
                sizes[k] += 1
                break
        else:
            buckets.setdefault(key, []).append(len(reps))
            reps.append(T)
            sizes.append(1)
    result = CensusResult(S, n, len(found), len(reps), reps, sizes, time.perf_counter() - start)
    if cache_dir:
        _atomic_write(_cache_path(cache_dir, S, n), json.dumps(result.to_json()))
    return result
