"""Command-line front end: ``sdpower <subcommand> ...``.

Exit status 0 on success, 1 on a domain error, 2 on a usage error; errors
are written to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from . import catalog
from . import constructions as C
from .census import enumerate_subdirect
from .certify import distinguish
from .classify import classify
from .errors import IsomorphismTimeout, SemigroupError
from .iso import are_isomorphic, fingerprint
from .semigroup import parse_semigroup, tuple_algebra_from_document
from .sequences import format_epseq, parse_epseq
from .structure import analysis_report

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_source(source):
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text()


def _load_semigroup(source=None, catalog_name=None):
    if catalog_name:
        return catalog.get(catalog_name)
    if source is None:
        raise UsageError("give an input path, '-' for stdin, or --catalog NAME")
    if source.startswith("catalog:"):
        return catalog.get(source[len("catalog:"):])
    return parse_semigroup(_read_source(source))


def _doc_digest(doc):
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]


def _envelope(command, inputs, body):
    return {
        "tool": "sdpower",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": body,
    }


def _input_info(S, label):
    return {"source": label, "order": S.order, "sha256": _doc_digest(S.to_document())}


def _render_table(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str, bool, float)) or x is None for x in (v if isinstance(v, list) else [])):
                lines.append(f"{pad}{k}:")
                lines.append(_render_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={v}" for k, v in item.items()))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{value}")
    return "\n".join(lines)


def _emit(args, payload):
    if args.format == "table":
        text = _render_table(payload["result"])
    else:
        text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


# ----------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    S = _load_semigroup(args.input, args.catalog)
    fp = fingerprint(S)
    body = {"valid": True, "order": S.order, "commutative": S.is_commutative(),
            "idempotents": fp.idempotents}
    return _envelope("validate", [_input_info(S, args.catalog or args.input)], body)


def cmd_analyze(args):
    S = _load_semigroup(args.input, args.catalog)
    return _envelope("analyze", [_input_info(S, args.catalog or args.input)], analysis_report(S))


def cmd_classify(args):
    S = _load_semigroup(args.input, args.catalog)
    return _envelope("classify", [_input_info(S, args.catalog or args.input)], classify(S).to_json())


def _family_body(fam):
    doc = fam.to_document()
    doc["size"] = len(fam.truncation)
    doc["closed"] = fam.truncation.closed
    doc["subdirect"] = all(fam.truncation.subdirect_coords)
    return doc


def cmd_construct(args):
    what = args.what
    S = _load_semigroup(args.input, args.catalog or ("L2" if what in ("between", "chain") else None))
    info = [_input_info(S, args.catalog or args.input)]
    if what == "between":
        if not (args.alpha and args.beta):
            raise UsageError("construct between needs --alpha and --beta")
        a, b = parse_epseq(S, args.alpha), parse_epseq(S, args.beta)
        return _envelope("construct between", info, {"between": format_epseq(C.between(a, b))})
    if what == "chain":
        chain = C.build_chain(args.length or 3, base=S)
        return _envelope("construct chain", info, {"chain": [format_epseq(c) for c in chain]})
    if what == "tilde":
        P = C.chain_algebra(S, C.build_chain(args.length or 3))
        T = C.tilde(S, P)
        fam = C.WitnessFamily(f"tilde(chain {args.length or 3})", S, [], T,
                              ("principal-ideal-filter",),
                              params={"construction": "tilde", "chain_length": args.length or 3})
        return _envelope("construct tilde", info, _family_body(fam))
    if what == "hat":
        from .structure import idempotent_semilattice
        if args.u:
            U = tuple_algebra_from_document(json.loads(_read_source(args.u)))
        else:
            E = idempotent_semilattice(S)
            U = C.tilde(E.base, C.chain_algebra(E.base, C.build_chain(args.length or 3)))
        T = C.hat(S, U)
        fam = C.WitnessFamily("hat", S, [], T, ("idempotent-semilattice",),
                              params={"construction": "hat", "u_size": len(U)})
        return _envelope("construct hat", info, _family_body(fam))
    if what == "tm":
        if args.m is None or args.arity is None:
            raise UsageError("construct tm needs --m and --arity")
        fam = C.t_m(S, args.m, args.index or 1, args.arity)
        return _envelope("construct tm", info, _family_body(fam))
    if what == "wm":
        if args.m is None or args.arity is None:
            raise UsageError("construct wm needs --m and --arity")
        fam = C.w_m(S, args.m, args.p_count or 1, args.arity)
        return _envelope("construct wm", info, _family_body(fam))
    raise UsageError(f"unknown construction {what!r}")


def _load_algebra(path):
    doc = json.loads(_read_source(path))
    if "result" in doc:
        doc = doc["result"]
    return tuple_algebra_from_document(doc)


def cmd_certify(args):
    T1, T2 = _load_algebra(args.first), _load_algebra(args.second)
    replay = f"sdpower certify {args.first} {args.second} --budget {args.budget}" + (
        " --cross-base" if args.cross_base else "")
    cert = distinguish(T1, T2, budget=args.budget, cross_base=args.cross_base, replay=replay)
    info = [
        {"source": args.first, "size": len(T1), "sha256": _doc_digest(T1.to_document())},
        {"source": args.second, "size": len(T2), "sha256": _doc_digest(T2.to_document())},
    ]
    return _envelope("certify", info, cert.to_json())


def cmd_enumerate(args):
    S = _load_semigroup(args.input, args.catalog)
    if args.arity is None:
        raise UsageError("enumerate needs --arity")
    res = enumerate_subdirect(S, args.arity, cache_dir=args.cache_dir)
    body = res.to_json()
    body.pop("base")
    return _envelope("enumerate", [_input_info(S, args.catalog or args.input)], body)


def cmd_iso(args):
    A = _load_semigroup(args.first)
    B = _load_semigroup(args.second)
    try:
        f = are_isomorphic(A, B, budget=args.budget)
        body = {"isomorphic": f is not None,
                "map": None if f is None else {A.elements[a]: B.elements[b] for a, b in enumerate(f)}}
    except IsomorphismTimeout as exc:
        body = {"isomorphic": "unknown", "budget": exc.budget}
    return _envelope("iso", [_input_info(A, args.first), _input_info(B, args.second)], body)


def build_parser():
    p = _Parser(prog="sdpower", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"sdpower {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def single(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", nargs="?", help="Cayley document path, or '-' for stdin")
        sp.add_argument("--catalog", help="use a bundled catalog semigroup")
        sp.set_defaults(fn=fn)
        return sp

    single("validate", cmd_validate, "check a Cayley document")
    single("analyze", cmd_analyze, "structure report")
    single("classify", cmd_classify, "decide the subdirect power type")
    sp = sub.add_parser("construct", parents=[common], help="build a witness construction")
    sp.add_argument("what", choices=("between", "chain", "tilde", "hat", "tm", "wm"))
    sp.add_argument("input", nargs="?", help="Cayley document path, or '-' for stdin")
    sp.add_argument("--catalog", help="use a bundled catalog semigroup")
    sp.set_defaults(fn=cmd_construct)
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--length", type=int)
    sp.add_argument("--u", help="U algebra document for hat")
    sp.add_argument("--m", help="M literal: 3k, >=4 or [3,6;+3]")
    sp.add_argument("--index", type=int, help="index count I for tm")
    sp.add_argument("--p-count", type=int, help="P count for wm")
    sp.add_argument("--arity", type=int)
    sp = single("enumerate", cmd_enumerate, "census of subdirect subsemigroups of S^n")
    sp.add_argument("--arity", type=int)
    sp.add_argument("--cache-dir")
    sp = sub.add_parser("certify", parents=[common], help="distinguish two tuple algebras")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--budget", type=int, default=10**7)
    sp.add_argument("--cross-base", action="store_true")
    sp.set_defaults(fn=cmd_certify)
    sp = sub.add_parser("iso", parents=[common], help="isomorphism oracle (paths or catalog:NAME)")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--budget", type=int, default=10**6)
    sp.set_defaults(fn=cmd_iso)
    return p


def run(argv=None):
    """Run the CLI; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        payload = args.fn(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return 2
    except (SemigroupError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    _emit(args, payload)
    return 0


def main():
    sys.exit(run())
