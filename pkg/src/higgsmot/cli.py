"""Command line driver, result documents and the on-disk cache.

Commands:

* ``higgsmot higgs --genus G --rank R --degree D`` -- the motivic class of
  the semistable Higgs moduli stack;
* ``higgsmot conn --genus G --rank R`` -- the class of the stack of
  bundles with connections (equals the degree-zero Higgs class);
* ``higgsmot table --genus G --rank R --degree D`` -- the raw table entry
  H_{R,D} of the ray-exponential (D must be nonnegative);
* ``higgsmot verify --suite NAME --genus G`` -- run a named suite of exact
  identity checks and report pass/fail per identity.

Results are rendered as JSON documents (the :class:`ClassDocument` schema),
as LaTeX, or as plain text; numerator and denominator are written in the
variables (u, v), grouped by powers of L = uv when the class lies in that
subring.  Documents are cached under a versioned directory layout, keyed by
the request and protected by a content checksum; cache writes are atomic
(write to a temporary file, then rename).

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 truncation
or resource error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from ._poly import RING_UV
from .curvezeta import make_curve, vol, zeta_eval, zeta_star
from .errors import HiggsmotError, InsufficientTruncationError
from .exactring import L, MotClass, ONE, make_class, nilcone_class
from .plethystic import GradedSeries, exp_pleth, log_pleth, pow_pleth
from .pipeline import (
    admissible_twist,
    conn_class,
    h_rd,
    harder_limit_check,
    higgs_table,
    mss_class,
    periodicity_check,
    slope_factorization_check,
    torsion_identity_check,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_TRUNCATION = 3


@dataclass(frozen=True)
class ComputeRequest:
    command: str
    genus: int
    rank: int = 1
    degree: int | None = None
    suites: tuple[str, ...] = ()
    format: str = "json"
    cache_dir: str | None = None


@dataclass(frozen=True)
class ClassDocument:
    """Lossless JSON-serializable form of one computed motivic class."""

    schema_version: str
    command: str
    genus: int
    rank: int
    degree: int
    truncation: dict = field(compare=False)
    num_terms: tuple = ()
    den_terms: tuple = ()
    checksum: str = ""

    def payload(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "genus": self.genus,
            "rank": self.rank,
            "degree": self.degree,
            "truncation": self.truncation,
            "class": {
                "numerator": [_term_json(t) for t in self.num_terms],
                "denominator": [_term_json(t) for t in self.den_terms],
            },
        }

    def to_json(self) -> str:
        doc = self.payload()
        doc["checksum"] = self.checksum
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    def to_class(self) -> MotClass:
        num = {(ue, ve): int(c) for c, ue, ve in self.num_terms}
        den = {(ue, ve): int(c) for c, ue, ve in self.den_terms}
        return make_class(num, den)


def _term_json(term) -> dict:
    coeff, ue, ve = term
    return {"coefficient": coeff, "u_exp": ue, "v_exp": ve}


def _term_tuple(obj) -> tuple:
    return (str(obj["coefficient"]), int(obj["u_exp"]), int(obj["v_exp"]))


def _poly_terms(poly) -> tuple:
    # graded lex descending, deterministic; big integers as decimal strings
    terms = sorted(
        poly.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True
    )
    return tuple((str(int(c)), e[0], e[1]) for e, c in terms)


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def make_document(
    command: str, genus: int, rank: int, degree: int, truncation: dict, value: MotClass
) -> ClassDocument:
    doc = ClassDocument(
        schema_version=SCHEMA_VERSION,
        command=command,
        genus=genus,
        rank=rank,
        degree=degree,
        truncation=truncation,
        num_terms=_poly_terms(value.num),
        den_terms=_poly_terms(value.den),
    )
    return ClassDocument(
        **{**doc.__dict__, "checksum": _checksum(doc.payload())}
    )


def document_from_json(text: str) -> ClassDocument:
    raw = json.loads(text)
    doc = ClassDocument(
        schema_version=str(raw["schema_version"]),
        command=str(raw["command"]),
        genus=int(raw["genus"]),
        rank=int(raw["rank"]),
        degree=int(raw["degree"]),
        truncation=dict(raw["truncation"]),
        num_terms=tuple(_term_tuple(t) for t in raw["class"]["numerator"]),
        den_terms=tuple(_term_tuple(t) for t in raw["class"]["denominator"]),
        checksum=str(raw["checksum"]),
    )
    if _checksum(doc.payload()) != doc.checksum:
        raise ValueError("checksum mismatch: document rejected")
    return doc


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _render_poly(poly, l_symbol: str, u_symbol: str, v_symbol: str, power: str) -> str:
    """Render an integer polynomial, grouping by powers of L when diagonal."""
    if not poly:
        return "0"
    terms = sorted(poly.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    diagonal = all(e[0] == e[1] for e, _ in terms)
    parts = []
    for (eu, ev), c in terms:
        c = int(c)
        if diagonal:
            mono = "1" if eu == 0 else (l_symbol if eu == 1 else f"{l_symbol}{power}{eu}")
        else:
            factors = []
            if eu:
                factors.append(u_symbol if eu == 1 else f"{u_symbol}{power}{eu}")
            if ev:
                factors.append(v_symbol if ev == 1 else f"{v_symbol}{power}{ev}")
            mono = "*".join(factors) if factors else "1"
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def render_text(value: MotClass) -> str:
    num = _render_poly(value.num, "L", "u", "v", "^")
    if value.den == RING_UV.one:
        return num
    den = _render_poly(value.den, "L", "u", "v", "^")
    return f"({num})/({den})"


def render_latex(value: MotClass) -> str:
    num = _render_poly(value.num, r"\mathbb{L}", "u", "v", "^")
    if value.den == RING_UV.one:
        return num
    den = _render_poly(value.den, r"\mathbb{L}", "u", "v", "^")
    return rf"\frac{{{num}}}{{{den}}}"


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------


def resolve_cache_dir(flag_value: str | None) -> Path:
    if flag_value:
        return Path(flag_value)
    env = os.environ.get("HIGGSMOT_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "higgsmot"


def _cache_path(cache_dir: Path, command: str, genus: int, rank: int, degree: int) -> Path:
    name = f"{command}_g{genus}_r{rank}_d{degree}.json"
    return cache_dir / f"schema-{SCHEMA_VERSION}" / name


def cache_load(cache_dir: Path, command, genus, rank, degree) -> ClassDocument | None:
    path = _cache_path(cache_dir, command, genus, rank, degree)
    if not path.is_file():
        return None
    try:
        doc = document_from_json(path.read_text(encoding="utf-8"))
    except (ValueError, KeyError, json.JSONDecodeError):
        return None
    if doc.schema_version != SCHEMA_VERSION:
        return None
    return doc


def cache_store(cache_dir: Path, doc: ClassDocument) -> Path:
    path = _cache_path(cache_dir, doc.command, doc.genus, doc.rank, doc.degree)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(doc.to_json())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_roundtrip(doc: ClassDocument, cache_dir: Path) -> ClassDocument:
    """Store then reload a document; the result must be identical."""
    cache_store(cache_dir, doc)
    loaded = cache_load(cache_dir, doc.command, doc.genus, doc.rank, doc.degree)
    if loaded is None:
        raise IOError("document did not survive a cache roundtrip")
    return loaded


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_compute(req: ComputeRequest) -> tuple[ClassDocument, str]:
    """Compute (or fetch from cache) the class for higgs/conn/table.

    Returns the document and the rendered stdout text for the requested
    format.  Deterministic: identical requests yield byte-identical output.
    """
    curve = make_curve(req.genus)
    degree = 0 if req.command == "conn" else req.degree
    if degree is None:
        raise ValueError(f"--degree is required for {req.command}")
    cache_dir = resolve_cache_dir(req.cache_dir)
    doc = cache_load(cache_dir, req.command, req.genus, req.rank, degree)
    if doc is None:
        if req.command == "higgs":
            value = mss_class(curve, req.rank, degree)
            e = admissible_twist(curve, req.rank, degree)
            truncation = {
                "r_max": req.rank,
                "d_max": degree + (e + 1) * req.rank,
                "twist": e,
            }
        elif req.command == "conn":
            value = conn_class(curve, req.rank)
            e = admissible_twist(curve, req.rank, 0)
            truncation = {
                "r_max": req.rank,
                "d_max": (e + 1) * req.rank,
                "twist": e,
            }
        elif req.command == "table":
            value = h_rd(curve, req.rank, degree)
            truncation = {"r_max": req.rank, "d_max": degree}
        else:
            raise ValueError(f"unknown command {req.command!r}")
        doc = make_document(req.command, req.genus, req.rank, degree, truncation, value)
        cache_store(cache_dir, doc)
    if req.format == "json":
        rendered = doc.to_json()
    elif req.format == "latex":
        rendered = render_latex(doc.to_class()) + "\n"
    else:
        rendered = render_text(doc.to_class()) + "\n"
    return doc, rendered


# -- verification suites -----------------------------------------------------


def _suite_zeta(curve):
    zeta = zeta_eval(curve, 0, 1)
    g = curve.genus
    yield (
        "zeta functional equation",
        zeta.substitute_z_inverse_l() == zeta.scale_monomial(1 - g, 2 - 2 * g),
    )
    yield (
        "zeta numerator special value",
        curve.p_at(L**-1) == L**-g * curve.p_at(ONE),
    )
    over_z = zeta.scale_monomial(0, -1)
    yield (
        "regularized zeta via residues",
        over_z.residue_simple(L**-1) == zeta_star(curve, 1, 0)
        and over_z.residue_simple(ONE) == zeta_star(curve, 0, 0),
    )
    yield ("zeta value invertibility", bool(zeta_eval(curve, -2, 0)))


def _suite_pleth(curve):
    x = curve.class_of_x
    f = GradedSeries({(1, 0): x, (1, 1): L, (2, 1): ONE - L}, 2, 3)
    yield ("Exp/Log roundtrip", log_pleth(exp_pleth(f)) == f)
    gseries = GradedSeries({(1, 2): x * L}, 2, 3)
    lhs = exp_pleth(f + gseries)
    from .plethystic import multiply

    yield (
        "Exp additivity",
        lhs.same_coefficients(multiply(exp_pleth(f), exp_pleth(gseries))),
    )
    nil = GradedSeries({(0, 1): ONE / (L - 1)}, 0, 6)
    expd = exp_pleth(nil)
    yield (
        "nilpotent cone series",
        all(expd.get(0, l) == nilcone_class(l) for l in range(7)),
    )
    unit_f = GradedSeries({(0, 0): ONE, (1, 0): x, (1, 1): L}, 2, 2)
    yield ("power structure unit", pow_pleth(unit_f, ONE) == unit_f)


def _suite_torsion(curve):
    yield ("torsion pairing series", torsion_identity_check(curve, 8))


def _suite_slope(curve):
    yield ("slope factorization", slope_factorization_check(curve, 2, 4))


def _suite_periodicity(curve):
    g = curve.genus
    bound = 2 * 1 * (g - 1)
    start = max(bound + 1, 0)
    yield (
        "degree periodicity (rank 2)",
        periodicity_check(curve, 2, start, start + 3),
    )


def _suite_harder(curve):
    for r in (2, 3):
        ok = all(harder_limit_check(curve, r, d) for d in (0, 1))
        yield (f"Borel-reduction limit (rank {r})", ok)


SUITES = {
    "zeta": _suite_zeta,
    "pleth": _suite_pleth,
    "torsion": _suite_torsion,
    "slope": _suite_slope,
    "periodicity": _suite_periodicity,
    "harder": _suite_harder,
}


def cmd_verify(req: ComputeRequest, out=sys.stdout) -> int:
    """Run the requested verification suites; returns the exit code."""
    names = list(req.suites)
    if "all" in names:
        names = list(SUITES)
    curve = make_curve(req.genus)
    failures = 0
    for name in names:
        for check_name, ok in SUITES[name](curve):
            status = "PASS" if ok else "FAIL"
            if not ok:
                failures += 1
            print(f"{status} [{name}] {check_name} (genus {req.genus})", file=out)
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higgsmot",
        description=(
            "Exact motivic classes of semistable Higgs moduli stacks and "
            "stacks of bundles with connections on a curve of given genus."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree_required: bool | None):
        p.add_argument("--genus", type=int, required=True, help="curve genus (>= 0)")
        p.add_argument("--rank", type=int, required=True, help="bundle rank (>= 1)")
        if degree_required is not None:
            p.add_argument(
                "--degree", type=int, required=degree_required, help="bundle degree"
            )
        p.add_argument(
            "--format", choices=("json", "latex", "text"), default="json"
        )
        p.add_argument("--cache-dir", default=None)

    p_higgs = sub.add_parser("higgs", help="semistable Higgs moduli class")
    common(p_higgs, True)
    p_conn = sub.add_parser("conn", help="bundles-with-connections class")
    common(p_conn, None)
    p_table = sub.add_parser("table", help="raw table entry of the ray exponential")
    common(p_table, True)

    p_verify = sub.add_parser("verify", help="run exact identity checks")
    p_verify.add_argument("--genus", type=int, required=True)
    p_verify.add_argument(
        "--suite",
        action="append",
        required=True,
        dest="suites",
        metavar="NAME",
        help=f"one of {', '.join([*SUITES, 'all'])} (repeatable)",
    )
    return parser


def request_from_args(args: argparse.Namespace) -> ComputeRequest:
    if args.command == "verify":
        for name in args.suites:
            if name != "all" and name not in SUITES:
                raise ValueError(f"unknown suite {name!r}")
        return ComputeRequest(
            command="verify", genus=args.genus, suites=tuple(args.suites)
        )
    if args.genus < 0:
        raise ValueError("genus must be nonnegative")
    if args.rank < 1:
        raise ValueError("rank must be positive")
    return ComputeRequest(
        command=args.command,
        genus=args.genus,
        rank=args.rank,
        degree=getattr(args, "degree", None),
        format=args.format,
        cache_dir=args.cache_dir,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        req = request_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        if req.command == "verify":
            return cmd_verify(req)
        _, rendered = cmd_compute(req)
        sys.stdout.write(rendered)
        sys.stdout.flush()
        return EXIT_OK
    except InsufficientTruncationError as exc:
        print(
            f"error: {exc} (required rank bound {exc.required_rank}, "
            f"degree bound {exc.required_degree})",
            file=sys.stderr,
        )
        return EXIT_TRUNCATION
    except HiggsmotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc.strerror or exc} ({getattr(exc, 'filename', '')})", file=sys.stderr)
        return EXIT_TRUNCATION


if __name__ == "__main__":
    sys.exit(main())
