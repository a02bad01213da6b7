"""Command line front end.

Every command reads an instance document (``--doc FILE`` or the individual
flags) and prints JSON on stdout.  Exit status: 0 on success, 1 when a
verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from .bijection import eigen_tabloids, gammas_for, phi, psi
from .characters import ModuleSpec, character, module_dimension, weighted_character_sum
from .core import root_sum_eval
from .cycle_tabloids import (
    count_marked,
    enumerate_marked,
    marked_from_json,
    render_marked,
)
from .document import InstanceDocument, document_from_obj
from .errors import ParseError, TabloidError, ValidationError
from .tabloids import FixedPointProfile, Tabloid, fixed_point_profile, tabloid_count

log = logging.getLogger("tabloidchar")

CACHE_ENV = "TABLOIDCHAR_CACHE_DIR"


class ProfileCache:
    """Fixed-point profiles on disk, keyed by a hash of the canonical
    instance and permutation.  Writes go through a temporary file and an
    atomic rename."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(inst, sigma) -> str:
        payload = json.dumps({"mu": inst.describe()["mu"], "l": list(inst.periods), "sigma": list(sigma.images)},
                             sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def profile(self, inst, sigma) -> FixedPointProfile:
        path = self.directory / f"{self.key(inst, sigma)}.json"
        if path.exists():
            try:
                counts = json.loads(path.read_text())["counts"]
                return FixedPointProfile(tuple(counts), sigma)
            except (OSError, ValueError, KeyError):
                log.warning("ignoring unreadable cache entry %s", path)
        profile = fixed_point_profile(inst, sigma)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"counts": list(profile.counts)}, fh)
        os.replace(tmp, path)
        return profile


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _read_json_arg(value: str, path: str):
    if value.startswith("@"):
        value = Path(value[1:]).read_text()
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", path) from None


def _load_document(args) -> InstanceDocument:
    obj = {}
    if args.doc:
        text = sys.stdin.read() if args.doc == "-" else Path(args.doc).read_text()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", "doc") from None
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", "doc")
    if args.mu is not None:
        obj["mu"] = _read_json_arg(args.mu, "mu")
    if args.l is not None:
        obj["l"] = _read_json_arg(args.l, "l")
    if args.sigma is not None:
        obj["sigma"] = args.sigma
    if args.rho is not None:
        obj["rho"] = _read_json_arg(args.rho if args.rho.startswith(("[", "@")) else f"[{args.rho}]", "rho")
    if args.j is not None:
        obj["j"] = args.j
    if args.k is not None:
        obj["k"] = args.k
    return document_from_obj(obj)


def _profile(args, inst, sigma):
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    if cache_dir:
        return ProfileCache(cache_dir).profile(inst, sigma)
    return fixed_point_profile(inst, sigma)


def _rows_ascii(rows) -> str:
    return "\n\n".join("\n".join(" ".join(map(str, r)) for r in comp) if comp else "." for comp in rows)


def cmd_count(args, doc):
    inst = doc.instance
    _emit({"m": inst.m, "l": inst.l, "tabloids": tabloid_count(inst),
           "dimension": module_dimension(ModuleSpec(inst, 0))})
    return 0


def cmd_char(args, doc):
    sigma = doc.permutation()
    k = doc.require("k")
    value = character(ModuleSpec(doc.instance, k), sigma, profile=_profile(args, doc.instance, sigma))
    _emit({"coeffs": list(value.coeffs), "approx": list(root_sum_eval(value))})
    return 0


def cmd_weighted_sum(args, doc):
    sigma = doc.permutation()
    j = doc.require("j")
    _emit({"value": weighted_character_sum(doc.instance, j, sigma, profile=_profile(args, doc.instance, sigma))})
    return 0


def _rho_and_gamma(doc):
    if doc.rho is None:
        raise ValidationError("required for this command", "rho")
    return doc.rho, gammas_for(doc.instance, doc.require("j"))


def cmd_marked(args, doc):
    rho, gamma = _rho_and_gamma(doc)
    if not args.list:
        _emit({"count": count_marked(doc.instance, rho, gamma)})
        return 0
    items = list(enumerate_marked(doc.instance, rho, gamma))
    if args.ascii:
        print("\n\n---\n\n".join(render_marked(mt) for mt in items))
    else:
        for mt in items:
            _emit(mt.to_json())
    return 0


def _object(args):
    if args.object is None:
        raise ValidationError("required for this command", "object")
    return _read_json_arg(args.object, "object")


def cmd_phi(args, doc):
    rho, gamma = _rho_and_gamma(doc)
    mt = marked_from_json(_object(args), doc.instance, rho, gamma)
    t = phi(mt, doc.j)
    if args.ascii:
        print(_rows_ascii(t.rows))
    else:
        _emit({"tabloid": t.to_json()})
    return 0


def cmd_psi(args, doc):
    rho, _ = _rho_and_gamma(doc)
    t = Tabloid.on(doc.instance, _object(args))
    mt = psi(t, rho, doc.j)
    if args.ascii:
        print(render_marked(mt))
    else:
        _emit(mt.to_json())
    return 0


def cmd_eigen(args, doc):
    sigma = doc.permutation()
    es = eigen_tabloids(doc.instance, sigma, doc.require("j"), verify=not args.no_verify)
    if args.ascii:
        print("\n\n---\n\n".join(_rows_ascii(t.rows) for t in es.members))
    else:
        _emit({"count": len(es), "verified": es.verified, "tabloids": [t.to_json() for t in es.members]})
    return 0 if es.verified is not False else 1


def cmd_render(args, doc):
    obj = _object(args)
    if isinstance(obj, list):
        print(_rows_ascii(Tabloid.on(doc.instance, obj).rows))
        return 0
    gamma = gammas_for(doc.instance, doc.j) if doc.j is not None else doc.instance.periods
    rho = doc.rho
    if rho is None:
        counts = {}
        for comp in obj.get("labels", []):
            for row in comp:
                for x in row:
                    counts[x] = counts.get(x, 0) + 1
        rho = [counts.get(k, 0) for k in range(1, max(counts, default=0) + 1)]
    print(render_marked(marked_from_json(obj, doc.instance, rho, gamma)))
    return 0


def cmd_verify(args, doc):
    from .verify import verify_bijection, verify_catalog

    if args.catalog:
        if args.max_m is None:
            raise ValidationError("--catalog needs --max-m", "max-m")
        report = verify_catalog(args.max_m, n_conjugates=args.conjugates, workers=args.workers)
        for r in report.reports:
            _emit(r.to_json(timing=args.timing))
        print(json.dumps(report.summary(), sort_keys=True), file=sys.stderr)
        if args.figures:
            from .report import render_catalog_figures

            for path in render_catalog_figures(report, args.figures, include_runtime=args.timing):
                log.info("wrote %s", path)
        return 0 if report.passed else 1
    rho, _ = _rho_and_gamma(doc)
    report = verify_bijection(doc.instance, doc.j, rho, n_conjugates=args.conjugates)
    _emit(report.to_json(timing=args.timing))
    return 0 if report.passed else 1


COMMANDS = {
    "count": (cmd_count, "number of tabloids and module dimension"),
    "char": (cmd_char, "character of M(k; l) at sigma as root-of-unity multiplicities"),
    "weighted-sum": (cmd_weighted_sum, "sum_k zeta^{jk} Char(M(k; l))(sigma)"),
    "marked": (cmd_marked, "count or list marked (rho, gamma, l)-tabloids"),
    "phi": (cmd_phi, "apply phi_j to a marked tabloid"),
    "psi": (cmd_psi, "apply the inverse of phi_j to an eigen tabloid"),
    "eigen": (cmd_eigen, "tabloids with sigma<T> = <T>a^-j"),
    "verify": (cmd_verify, "check the counting identities and the bijection"),
    "render": (cmd_render, "draw a tabloid or marked tabloid"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--doc", help="instance document (JSON file, '-' for stdin)")
    common.add_argument("--mu", help="JSON list of partitions, e.g. [[2,2],[4]]")
    common.add_argument("--l", help="JSON list of periods, e.g. [2,1]")
    common.add_argument("--sigma", help="permutation in cycle notation, e.g. (1,2,3,4)(5,6)(7,8)")
    common.add_argument("--rho", help="cycle type, e.g. 4,2,2; selects sigma_rho")
    common.add_argument("--j", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--object", help="JSON tabloid or marked tabloid (prefix @ to read a file)")
    common.add_argument("--list", action="store_true", help="enumerate instead of counting")
    common.add_argument("--ascii", action="store_true", help="draw diagrams instead of JSON")
    common.add_argument("--cache-dir", help=f"profile cache directory (default ${CACHE_ENV})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tabloidchar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "verify":
            p.add_argument("--catalog", action="store_true", help="run the whole built-in catalog")
            p.add_argument("--max-m", type=int)
            p.add_argument("--conjugates", type=int, default=1, help="random conjugates checked per triple")
            p.add_argument("--workers", type=int, default=None)
            p.add_argument("--figures", help="directory for matplotlib figures of the catalog run")
            p.add_argument("--timing", action="store_true", help="include elapsed seconds in each report")
        if name == "eigen":
            p.add_argument("--no-verify", action="store_true", help="skip the brute-force comparison")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    func = COMMANDS[args.command][0]
    try:
        doc = None if (args.command == "verify" and args.catalog) else _load_document(args)
        return func(args, doc)
    except (TabloidError, OSError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "path", None) and not isinstance(exc, OSError):
            err["path"] = exc.path
        cause = getattr(exc, "cause", None)
        if cause is not None:
            err["cause"] = type(cause).__name__
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
