"""Command-line front end.

Every command builds a JSON-able report.  ``--format`` picks how it is
printed; basis families and character tables go through a content-addressed
cache when ``--cache-dir`` is given.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .bases import BasisError, weight_space
from .characters import CharacterError, dim_table, simple_chars
from .exactq import LaurentPoly
from .rootdata import DimVector, self_dual_weights
from .shuffle import ShuffleElt, shuffle_mul
from .thetamod import ThetaElt, axiom_suite, ek_suite, standard_elt, star, theta_good_bruteforce
from .words import (
    ORDER_TAG,
    format_word,
    good_lyndon_words,
    good_words,
    parse_word,
    theta_good_words,
    theta_lyndon_words,
)
from . import oklrsym


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


# -- output -----------------------------------------------------------------------------

def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def terms_map(elt):
    return {format_word(w): elt.terms[w].to_json() for w in elt.words()}


def terms_human(elt):
    return [{"word": format_word(w), "coeff": str(elt.terms[w])} for w in elt.words()]


def render(report, fmt):
    rows = report.get("rows")
    if fmt == "json":
        return dumps(report["data"]) + "\n"
    if rows is None:
        rows = [{"key": k, "value": json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}
                for k, v in sorted(report["data"].items())]
    columns = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _cell(r.get(k, "")) for k in columns})
        return buf.getvalue()
    widths = {c: max([len(c)] + [len(_cell(r.get(c, ""))) for r in rows]) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns).rstrip()]
    lines.append("  ".join("-" * widths[c] for c in columns))
    for r in rows:
        lines.append("  ".join(_cell(r.get(c, "")).ljust(widths[c]) for c in columns).rstrip())
    return "\n".join(lines) + "\n"


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


# -- cache ------------------------------------------------------------------------------

def cache_key(kind, weight, framing=""):
    key = {"version": __version__, "kind": kind, "weight": str(weight), "framing": str(framing), "order": ORDER_TAG}
    return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest(), key


def checksum(payload):
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def cached(cache_dir, kind, weight, compute, framing="", warn=None):
    """Return compute(), going through the cache directory when one is set.

    A cache file whose checksum does not match its payload is ignored and
    rewritten.
    """
    if cache_dir is None:
        return compute()
    digest, key = cache_key(kind, weight, framing)
    path = Path(cache_dir) / f"{digest}.json"
    if path.exists():
        try:
            blob = json.loads(path.read_text())
            if blob.get("key") == key and blob.get("checksum") == checksum(blob.get("payload")):
                return blob["payload"]
        except (OSError, ValueError):
            pass
        print(f"warning: discarding corrupt cache entry {path.name}", file=warn or sys.stderr)
    payload = compute()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(dumps({"key": key, "checksum": checksum(payload), "payload": payload}))
    tmp.replace(path)
    return payload


# -- parsing ------------------------------------------------------------------------------

def weight_arg(text):
    try:
        return DimVector.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def word_arg(text):
    try:
        return parse_word(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def self_dual(beta):
    if not beta.is_self_dual():
        raise UsageError(f"weight {beta} is not self-dual")
    return beta


# -- commands -----------------------------------------------------------------------------

def cmd_words(args):
    beta = weight_arg(args.weight)
    lam = weight_arg(args.lam) if args.lam else DimVector()
    kind = args.kind
    if kind in ("good", "lyndon") and lam:
        raise UsageError("--lambda only applies to theta kinds")
    if kind == "good":
        words = good_words(beta)
    elif kind == "lyndon":
        words = good_lyndon_words(beta)
    elif kind == "theta-good":
        self_dual(beta)
        words = theta_good_bruteforce(beta, lam, method="exact") if lam else theta_good_words(beta)
    else:
        self_dual(beta)
        if lam:
            raise UsageError("theta-lyndon enumeration is for zero framing only")
        words = theta_lyndon_words(beta)
    out = [format_word(w) for w in words]
    data = {"weight": str(beta), "kind": kind, "framing": str(lam), "count": len(out), "words": out}
    return {"data": data, "rows": [{"word": w} for w in out]}


def cmd_shuffle(args):
    a, b = word_arg(args.a), word_arg(args.b)
    if args.op == "mul":
        if args.lam:
            raise UsageError("--lambda only applies to star")
        res = shuffle_mul(ShuffleElt.word(a), ShuffleElt.word(b))
        data = {"op": "mul", "left": format_word(a), "right": format_word(b), "terms": terms_map(res)}
    else:
        lam = weight_arg(args.lam) if args.lam else DimVector()
        res = star(ThetaElt.word(a, framing=lam), ShuffleElt.word(b), lam)
        data = {"op": "star", "left": format_word(a), "right": format_word(b), "framing": str(lam),
                "terms": terms_map(res)}
    return {"data": data, "rows": terms_human(res)}


BASIS_KINDS = {"monomial": "monomial", "lyndon": "lyndon", "pbw": "pbw", "canonical": "canonical",
               "dual-pbw": "dual_pbw", "dual-canonical": "dual_canonical"}


def cmd_basis(args):
    beta = self_dual(weight_arg(args.weight))
    kind = BASIS_KINDS[args.kind]
    payload = cached(args.cache_dir, f"basis:{kind}", beta, lambda: weight_space(beta).family(kind).to_json(),
                     warn=args.err)
    rows = [{"word": e["word"], "terms": " + ".join(f"({_laurent_str(t['coeff'])})*[{t['word']}]" for t in e["terms"])}
            for e in payload["elements"]]
    return {"data": payload, "rows": rows}


def _laurent_str(obj):
    return str(LaurentPoly.from_json(obj))


def _char_payload(beta, what):
    if what == "standard":
        table = {format_word(w): standard_elt(w).terms_json() for w in theta_good_words(beta)}
        return {"weight": str(beta), "standards": table}
    if what == "dims":
        return dim_table(beta)
    return simple_chars(beta).to_json()


def cmd_char(args):
    beta = self_dual(weight_arg(args.weight))
    what = args.what
    kind = "simple" if what in ("simple", "decomp") else what
    payload = cached(args.cache_dir, f"char:{kind}", beta, lambda: _char_payload(beta, kind), warn=args.err)
    if what == "standard":
        data = payload
        rows = [{"word": w, "character": _terms_str(t)} for w, t in sorted(payload["standards"].items())]
    elif what == "dims":
        data = payload
        rows = payload["rows"]
    elif what == "simple":
        data = {"weight": payload["weight"], "words": payload["words"], "simples": payload["simples"]}
        rows = [{"word": w, "character": _terms_str(payload["simples"][w])} for w in payload["words"]]
    else:
        data = {"weight": payload["weight"], "words": payload["words"], "decomp": payload["decomp"]}
        rows = [dict({"standard": w}, **dict(zip(payload["words"], row))) for w, row in zip(payload["words"], payload["decomp"])]
    return {"data": data, "rows": rows}


def _terms_str(terms):
    return " + ".join(f"({_laurent_str(t['coeff'])})*[{t['word']}]" for t in terms) or "0"


# -- verify ---------------------------------------------------------------------------------

DEFAULT_LETTERS = (1, 3)


def _weights_for(args):
    if args.beta:
        return [self_dual(weight_arg(args.beta))]
    n = args.n if args.n is not None else 2
    return [b for b in self_dual_weights(DEFAULT_LETTERS, n) if b.theta_size() == n]


def _klr_job(job):
    beta_text, lam_text, max_deg = job
    beta, lam = DimVector.parse(beta_text), DimVector.parse(lam_text)
    rows = oklrsym.verify_relations(beta, lam.as_dict(), max_deg)
    return beta_text, rows


def _grading_job(job):
    beta_text, lam_text, max_deg = job
    beta, lam = DimVector.parse(beta_text), DimVector.parse(lam_text)
    return beta_text, oklrsym.verify_grading(beta, lam.as_dict(), max_deg=max_deg)


def _run_jobs(fn, jobs, workers):
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    else:
        results = [fn(j) for j in jobs]
    return sorted(results, key=lambda r: r[0])


def cmd_verify(args):
    lam = weight_arg(args.lam) if args.lam else DimVector()
    what = args.what
    if what in ("klr", "grading", "pbw"):
        weights = _weights_for(args)
        if what == "pbw" and any(b.theta_size() > 2 for b in weights):
            raise UsageError("the PBW check is limited to n <= 2")
        max_deg = args.max_degree if args.max_degree is not None else (6 if what == "klr" else 4)
        jobs = [(str(b), str(lam), max_deg) for b in weights]
        if what == "klr":
            results = _run_jobs(_klr_job, jobs, args.jobs)
            rows = [dict(r, weight=b) for b, rs in results for r in rs]
            failed = [r for r in rows if r["status"] != "pass"]
            data = {"framing": str(lam), "max_degree": max_deg, "weights": [b for b, _ in results],
                    "instances": len(rows), "failures": failed}
            table = [{"weight": r["weight"], "family": r["family"], "case": r["case"], "word": r["weight_word"],
                      "status": r["status"]} for r in rows]
        elif what == "grading":
            results = _run_jobs(_grading_job, jobs, args.jobs)
            rows = [dict(r, weight=b) for b, rep in results for r in rep["rows"]]
            failed = [r for r in rows if r["status"] != "pass"]
            data = {"framing": str(lam), "offsets": {b: rep["offsets"] for b, rep in results},
                    "instances": len(rows), "failures": failed}
            table = [{"weight": r["weight"], "case": r["case"], "word": r["weight_word"], "status": r["status"]}
                     for r in rows]
        else:
            reports = [oklrsym.verify_pbw_independence(b, lam.as_dict(), max_deg=max_deg) for b in weights]
            degenerate = oklrsym.verify_pbw_independence(DimVector({1: 1, -1: 1}), None,
                                                         params=oklrsym.degenerate_params())
            failed = [r for r in reports if r["status"] != "independent"]
            if degenerate["status"] != "dependent":
                failed.append({"degenerate": degenerate})
            data = {"framing": str(lam), "reports": reports, "degenerate_fixture": degenerate, "failures": failed}
            table = [{"weight": r["weight"], "status": r["status"], "elements": r.get("elements", "")}
                     for r in reports] + [{"weight": "degenerate " + degenerate["weight"],
                                           "status": degenerate["status"], "elements": ""}]
    elif what == "ek":
        n = args.n if args.n is not None else 3
        rep = ek_suite(n, 3, lam.as_dict())
        failed = rep["failures"]
        data = rep
        table = [{"words": rep["words"], "failures": len(failed)}]
    else:
        n = args.n if args.n is not None else 3
        rep = axiom_suite(n, 3, lam.as_dict(), seed=args.seed)
        failed = rep["failures"]
        data = rep
        table = [{"checked": rep["checked"], "failures": len(failed)}]
    data["status"] = "fail" if failed else "pass"
    report = {"data": data, "rows": table}
    if failed:
        raise VerificationFailed(report)
    return report


# -- entry point ------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let weights and words such as "-1:2,1:2" or "-1,3" through as values
        self._negative_number_matcher = re.compile(r"^-\d[\d,:\-]*$")

    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    p = _Parser(prog="qshuffle", description="Quantum shuffle algebras and theta-shuffle modules.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    w = sub.add_parser("words", parents=[common], help="enumerate words")
    w.add_argument("action", choices=["enum"])
    w.add_argument("--weight", required=True)
    w.add_argument("--kind", required=True, choices=["good", "lyndon", "theta-good", "theta-lyndon"])
    w.add_argument("--lambda", dest="lam")
    w.set_defaults(func=cmd_words)

    s = sub.add_parser("shuffle", parents=[common], help="shuffle product and module action")
    s.add_argument("op", choices=["mul", "star"])
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--lambda", dest="lam")
    s.set_defaults(func=cmd_shuffle)

    b = sub.add_parser("basis", parents=[common], help="bases of a weight space")
    b.add_argument("--weight", required=True)
    b.add_argument("--kind", required=True, choices=list(BASIS_KINDS))
    b.set_defaults(func=cmd_basis)

    c = sub.add_parser("char", parents=[common], help="graded characters")
    c.add_argument("what", choices=["standard", "simple", "decomp", "dims"])
    c.add_argument("--weight", required=True)
    c.set_defaults(func=cmd_char)

    v = sub.add_parser("verify", parents=[common], help="relation and property checks")
    v.add_argument("what", choices=["klr", "grading", "pbw", "ek", "axioms"])
    v.add_argument("--n", type=int)
    v.add_argument("--beta")
    v.add_argument("--lambda", dest="lam")
    v.add_argument("--max-degree", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 2
    for name, default in (("format", "table"), ("cache_dir", None), ("seed", 0), ("jobs", 1)):
        if not hasattr(args, name):
            setattr(args, name, default)
    args.err = err
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except VerificationFailed as exc:
        out.write(render(exc.report, args.format))
        return 1
    except (BasisError, CharacterError) as exc:
        out.write(render({"data": {"status": "fail", "error": str(exc)}, "rows": None}, args.format))
        return 1
    out.write(render(report, args.format))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
