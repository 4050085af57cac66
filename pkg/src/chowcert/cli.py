"""Command line front end: run checks, print or write certificates.

Exit status is 0 when every certificate is verified, 1 when any is falsified
or divergent, and 2 on usage or internal errors.  Set ``CHOWCERT_LOG`` to a
logging level name for diagnostics on stderr.  ``CHOWCERT_TIMING=0`` drops
elapsed times from the output so whole documents can be compared byte for byte.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from . import decompositions as dec
from . import fano, properties
from .certificate import VERDICTS, Certificate, Timer
from .ideals import NormalizedIdeal

log = logging.getLogger("chowcert")

IDENTITY_MAX_N = 5
PLANES_MAX_N = 4


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    certificates: List[Certificate] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def summary(self) -> dict:
        counts = {v: 0 for v in VERDICTS}
        for c in self.certificates:
            counts[c.verdict] += 1
        return counts

    def exit_status(self) -> int:
        s = self.summary()
        if s["error"]:
            return 2
        if s["falsified"] or s["divergence"]:
            return 1
        return 0


def expect_falsified(cert: Certificate, claim: str) -> Certificate:
    """Wrap a deliberately broken check: verified exactly when the inner check failed."""
    return Certificate(
        claim=claim,
        verdict="verified" if cert.verdict == "falsified" else "falsified",
        inputs={"mutated": cert.inputs},
        data={"inner_verdict": cert.verdict},
        witness=cert.witness,
        elapsed_ms=cert.elapsed_ms,
    )


# -- subcommand bodies --------------------------------------------------------

def identity_certificates(name: str, n: Optional[int], normalization: str) -> List[Certificate]:
    if name == "derksen":
        if n not in (None, 3):
            raise UsageError("derksen's identity is for n = 3 only")
        d = dec.derksen_det3()
        cert = dec.verify_decomposition(d)
        cert.data["tensor_terms"] = _tensor_count(d)
        return [cert]
    n = 3 if n is None else n
    if not 1 <= n <= IDENTITY_MAX_N:
        raise UsageError(f"identity --n must be in 1..{IDENTITY_MAX_N}")
    if name == "ryser":
        return [dec.verify_decomposition(dec.ryser(n))]
    if name == "glynn":
        d = dec.glynn(n, normalization)
        cert = dec.verify_decomposition(d)
        cert.data["tensor_terms"] = _tensor_count(d)
        return [cert]
    if name == "waring":
        return [dec.verify_decomposition(dec.waring_of_product(dec.generic_linear_forms(n)))]
    raise UsageError(f"unknown identity {name!r}")


def _tensor_count(d) -> Optional[int]:
    check = dec.to_tensor_terms(d)
    return len(check.terms) if check.ok else None


def planes_certificates(form: str, n: int) -> List[Certificate]:
    if not 1 <= n <= PLANES_MAX_N:
        raise UsageError(f"planes --n must be in 1..{PLANES_MAX_N}")
    if form == "diagonal":
        return [fano.coordinate_planes_diagonal(n)[1]]
    if n < 2:
        raise UsageError("planes --form permanent needs n >= 2")
    return [fano.perm_row_col_planes(n)[1]]


def fano_certificates(chart: str) -> List[Certificate]:
    if chart not in fano.CHARTS:
        raise UsageError(f"unknown chart {chart!r}")
    return [fano.run_pipeline(fano.CHARTS[chart]).certificate]


def all_certificates() -> List[Certificate]:
    certs: List[Certificate] = []
    for n in (2, 3, 4):
        certs.append(dec.verify_decomposition(dec.ryser(n)))
    for n in (2, 3, 4):
        certs.append(dec.verify_decomposition(dec.glynn(n, "corrected")))
        certs.append(dec.glynn_display_ratio(n))
    certs.append(dec.verify_decomposition(dec.derksen_det3()))
    certs.append(dec.tensor_certificate(dec.derksen_det3()))
    certs.append(dec.tensor_certificate(dec.glynn(3, "corrected")))
    for d in (2, 3, 4):
        certs.append(dec.verify_decomposition(dec.waring_of_product(dec.generic_linear_forms(d))))
    for n in (3, 4):
        certs.append(dec.bounds_certificate(n))
    seen = []
    for label in ("A", "B"):
        chart = fano.CHARTS[label]
        certs.append(fano.chart_ideal_certificate(chart))
        result = fano.run_pipeline(chart, keep_discarded=True)
        certs.append(result.certificate)
        seen.append((label, result.seen + result.discarded))
    certs.append(fano.verify_template_family())
    certs.append(expect_falsified(fano.verify_template_family(pq_sign=1), "template-family-mutation-pq"))
    certs.append(expect_falsified(fano.verify_template_family(rs_sign=1), "template-family-mutation-rs"))
    certs.append(fano.torus_fixed_planes())
    for n in (2, 3, 4):
        certs.append(fano.coordinate_planes_diagonal(n)[1])
    for n in (2, 3):
        certs.append(fano.perm_row_col_planes(n)[1])
    certs.append(fano.det_restriction_check())
    certs.append(expect_falsified(fano.det_restriction_check(pq_sign=1), "det-restriction-mutation"))
    certs.append(properties.ring_axioms())
    certs.append(properties.transversal_oracle())
    for label, ideals in seen:
        certs.append(properties.normalization_idempotence(ideals, f"chart-{label}"))
    return certs


def run(args: argparse.Namespace) -> RunReport:
    timer = Timer()
    cmd = args.command
    if cmd == "identity":
        certs = identity_certificates(args.name, args.n, args.normalization)
    elif cmd == "bounds":
        if not 1 <= args.n <= 64:
            raise UsageError("bounds --n must be in 1..64")
        certs = [dec.bounds_certificate(args.n)]
    elif cmd == "fano":
        certs = fano_certificates(args.chart)
    elif cmd == "planes":
        certs = planes_certificates(args.form, args.n)
    elif cmd == "orbits":
        certs = [fano.torus_fixed_planes()]
    elif cmd == "restriction":
        certs = [fano.det_restriction_check()]
    elif cmd == "all":
        certs = all_certificates()
    else:
        raise UsageError(f"unknown command {cmd!r}")
    return RunReport(certs, timer.ms())


# -- output -------------------------------------------------------------------

def emit(report: RunReport, fmt: str = "text", timing: bool = True) -> str:
    if fmt == "structured":
        doc = {
            "certificates": [c.to_dict(timing) for c in report.certificates],
            "summary": report.summary(),
        }
        if timing:
            doc["elapsed_ms"] = report.elapsed_ms
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    width = max([len(c.claim) for c in report.certificates] + [5])
    header = f"{'claim':<{width}}  {'verdict':<10}"
    if timing:
        header += f"  {'ms':>10}"
    lines.append(header + "  detail")
    for c in report.certificates:
        row = f"{c.claim:<{width}}  {c.verdict:<10}"
        if timing:
            row += f"  {c.elapsed_ms:>10.1f}"
        lines.append(row + "  " + _detail(c))
    s = report.summary()
    lines.append("")
    lines.append(
        f"{len(report.certificates)} certificate{'' if len(report.certificates) == 1 else 's'}: "
        + ", ".join(f"{s[v]} {v}" for v in VERDICTS)
        + (f" in {report.elapsed_ms / 1000:.2f} s" if timing else "")
    )
    return "\n".join(lines) + "\n"


def _detail(c: Certificate) -> str:
    bits = []
    for key in ("survivor_count", "term_count", "tensor_terms", "scalar_ratio", "contained", "planes", "failures"):
        if key in c.data and c.data[key] is not None:
            bits.append(f"{key}={c.data[key]}")
    if "orbits" in c.data:
        bits.append("orbits=" + ";".join(f"{o['invariant']}x{o['size']}" for o in c.data["orbits"]))
    if c.claim.startswith("rank-bounds"):
        bits.append(", ".join(f"{k}={v}" for k, v in c.data.items() if k != "n" and v is not None))
    if c.witness and c.verdict != "verified":
        bits.append(f"witness={json.dumps(c.witness, sort_keys=True)}")
    return " ".join(bits)


def load_report(text: str) -> RunReport:
    """Parse a structured document back into certificates."""
    doc = json.loads(text)
    certs = [Certificate.from_dict(d) for d in doc["certificates"]]
    return RunReport(certs, doc.get("elapsed_ms", 0.0))


def survivors_from_certificate(cert: Certificate) -> List[NormalizedIdeal]:
    chart = fano.CHARTS[cert.extra["chart"]]
    return [NormalizedIdeal.from_dict(chart.ring, s) for s in cert.extra["survivors"]]


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="chowcert", description="Exact checks for product-rank computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identity", parents=[common], help="verify a named identity by expansion")
    p.add_argument("--name", required=True, choices=("ryser", "glynn", "derksen", "waring"))
    p.add_argument("--n", type=int)
    p.add_argument("--normalization", choices=dec.GLYNN_NORMALIZATIONS, default="corrected")

    p = sub.add_parser("bounds", parents=[common], help="Waring and product rank bounds")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("fano", parents=[common], help="split the 6-plane ideal on a Pluecker chart")
    p.add_argument("--chart", required=True, choices=("A", "B"))

    p = sub.add_parser("planes", parents=[common], help="coordinate planes on V(F) or V(perm_n)")
    p.add_argument("--form", required=True, choices=("diagonal", "permanent"))
    p.add_argument("--n", type=int, required=True)

    sub.add_parser("orbits", parents=[common], help="torus-fixed coordinate 6-planes up to symmetry")
    sub.add_parser("restriction", parents=[common], help="substitution check on the 12-variable cubic")
    sub.add_parser("all", parents=[common], help="every check in sequence")
    return parser


def main(argv=None) -> int:
    level = os.environ.get("CHOWCERT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    timing = os.environ.get("CHOWCERT_TIMING", "1") != "0"
    try:
        report = run(args)
    except UsageError as exc:
        print(f"chowcert: error: {exc}", file=sys.stderr)
        return 2
    except Exception:  # noqa: BLE001
        log.exception("internal error")
        return 2
    text = emit(report, args.format, timing)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"chowcert: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return report.exit_status()


if __name__ == "__main__":
    sys.exit(main())
