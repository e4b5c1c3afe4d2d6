"""Named small semigroups and parameterised families."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import permutations
from pathlib import Path

from .errors import PreconditionError
from .semigroup import FiniteSemigroup, direct_power, direct_product, parse_semigroup


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    semigroup: FiniteSemigroup
    note: str


# ----------------------------------------------------------------------------
# families


def cyclic_group(n):
    if n < 1:
        raise PreconditionError("cyclic group order must be >= 1")
    names = ["e"] + (["g"] if n > 1 else []) + [f"g{k}" for k in range(2, n)]
    return FiniteSemigroup(names, [[(i + j) % n for j in range(n)] for i in range(n)])


def null_semigroup(n):
    if n < 1:
        raise PreconditionError("null semigroup order must be >= 1")
    names = ["0"] + [chr(ord("a") + k) if k < 26 else f"a{k}" for k in range(n - 1)]
    return FiniteSemigroup(names, [[0] * n for _ in range(n)])


def chain(n):
    """n-element chain semilattice 0 < 1 < ... under min."""
    if n < 1:
        raise PreconditionError("chain length must be >= 1")
    return FiniteSemigroup([str(i) for i in range(n)], [[min(i, j) for j in range(n)] for i in range(n)])


def monogenic_nilpotent(k):
    """{0, t, t^2, ..., t^(k-1)} with t^k = 0: nilpotent of class k."""
    if k < 2:
        raise PreconditionError("nilpotency class must be >= 2")
    names = ["0", "t"] + [f"t{p}" for p in range(2, k)]
    # element p (1 <= p < k) is t^p; index 0 is zero
    table = [[0] * k for _ in range(k)]
    for p in range(1, k):
        for q in range(1, k):
            table[p][q] = p + q if p + q < k else 0
    return FiniteSemigroup(names, table)


def left_zero(n):
    return FiniteSemigroup([f"l{i + 1}" for i in range(n)], [[i] * n for i in range(n)])


def right_zero(n):
    return FiniteSemigroup([f"r{i + 1}" for i in range(n)], [list(range(n)) for _ in range(n)])


def rectangular_band(a, b):
    if a < 1 or b < 1:
        raise PreconditionError("rectangular band dimensions must be >= 1")
    cells = [(i, j) for i in range(a) for j in range(b)]
    table = [[cells.index((i, l)) for (k, l) in cells] for (i, j) in cells]
    return FiniteSemigroup([f"{i + 1}{j + 1}" for i, j in cells], table)


def group_extension(m):
    """Z_m with one extra element a: a^2 = e and a acts as the identity on Z_m."""
    if m < 1:
        raise PreconditionError("group order must be >= 1")
    G = cyclic_group(m)
    table = [list(row) + [i] for i, row in enumerate(G.rows)]
    table.append(list(range(m)) + [0])
    return FiniteSemigroup(list(G.elements) + ["a"], table)


def symmetric_group(n):
    perms = list(permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    # (pq)(x) = q(p(x)): apply the left factor first
    table = [[index[tuple(q[p[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteSemigroup(["".join(str(v + 1) for v in p) for p in perms], table)


FAMILIES = {
    "cyclic": cyclic_group,
    "null": null_semigroup,
    "chain": chain,
    "monogenic-nilpotent": monogenic_nilpotent,
    "left-zero": left_zero,
    "right-zero": right_zero,
    "rectangular-band": rectangular_band,
    "group-extension": group_extension,
    "symmetric": symmetric_group,
}


def families(kind, *params):
    """Member of a parameterised family, e.g. ``families("null", 4)``."""
    if kind == "product":
        A, B = params
        return direct_product(A, B)
    try:
        fn = FAMILIES[kind]
    except KeyError:
        raise PreconditionError(f"unknown family {kind!r}") from None
    return fn(*params)


# ----------------------------------------------------------------------------
# named corpus


def _definitions():
    L2 = chain(2)
    Z2 = cyclic_group(2)
    N2 = null_semigroup(2)
    return {
        "T1": (FiniteSemigroup(["e"], [[0]]), "trivial semigroup"),
        "L2": (L2, "two-element semilattice"),
        "SL3": (chain(3), "three-element chain semilattice"),
        "B2": (direct_power(L2, 2), "2x2 Boolean meet-semilattice"),
        "Z2": (Z2, "cyclic group of order 2"),
        "Z3": (cyclic_group(3), "cyclic group of order 3"),
        "S3": (symmetric_group(3), "symmetric group of order 6"),
        "N2": (N2, "null semigroup of order 2"),
        "N3": (null_semigroup(3), "null semigroup of order 3"),
        "NIL3": (
            FiniteSemigroup(["0", "x", "y"], [[0, 0, 0], [0, 2, 0], [0, 0, 0]]),
            "nilpotent of class 3: x^2 = y, all other products 0",
        ),
        "NIL4": (monogenic_nilpotent(4), "monogenic nilpotent of class 4"),
        "GN3": (
            FiniteSemigroup(["e", "g", "a"], [[0, 1, 0], [1, 0, 1], [0, 1, 0]]),
            "Z2 = {e, g} extended by a with a^2 = e",
        ),
        "LZ2": (left_zero(2), "left-zero semigroup xy = x"),
        "RZ2": (right_zero(2), "right-zero semigroup xy = y"),
        "RB22": (rectangular_band(2, 2), "2x2 rectangular band"),
        "Z2xN2": (direct_product(Z2, N2), "direct product of Z2 and N2"),
        "SL2N": (
            FiniteSemigroup(["0", "a", "1"], [[0, 0, 0], [0, 0, 1], [0, 1, 2]]),
            "two idempotents 0 < 1, archimedean components {0, a} and {1}",
        ),
    }


ALIASES = {"Z2×N2": "Z2xN2", "Z2*N2": "Z2xN2"}


def _data_dir():
    return resources.files("sdpower") / "data"


def names():
    return sorted(p.name[:-5] for p in _data_dir().iterdir() if p.name.endswith(".json"))


def _read_entry(path, name):
    doc = json.loads(path.read_text())
    return CatalogEntry(name, parse_semigroup(doc), doc.get("note", ""))


def entry(name):
    name = ALIASES.get(name, name)
    path = _data_dir() / f"{name}.json"
    if not path.is_file():
        raise PreconditionError(f"unknown catalog name {name!r}")
    return _read_entry(path, name)


def get(name):
    return entry(name).semigroup


def load_directory(path):
    """User catalog: every ``*.json`` Cayley document in a directory, keyed by stem."""
    out = {}
    for p in sorted(Path(path).glob("*.json")):
        out[p.stem] = _read_entry(p, p.stem)
    return out


def write_builtin_data(directory=None):
    """Regenerate the bundled data files from the definitions above."""
    directory = Path(directory) if directory else Path(__file__).parent / "data"
    directory.mkdir(parents=True, exist_ok=True)
    for name, (S, note) in _definitions().items():
        doc = S.to_document()
        doc["note"] = note
        (directory / f"{name}.json").write_text(json.dumps(doc) + "\n")
