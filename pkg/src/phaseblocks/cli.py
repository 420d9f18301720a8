"""Command-line surface.

Subcommands: check, decompose, factor-lu, factor-cholesky, psrp, oracle,
gen, mutate, verify.  Exit codes: 0 accepted/pass, 1 not PSD / check
failed, 2 out of class, 3 not Hermitian, 4 I/O or usage error.  Document
output goes to stdout or --output; --figure additionally renders a figure
to the given file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .certificate import (
    Certificate,
    CertificateError,
    mutate,
    random_certificate,
    reconstruct,
    verify_certificate,
)
from .core import NotHermitianError, ToleranceConfig
from .documents import DocumentError, RunReport, emit, parse_certificate_document
from .factor import cholesky_structured, lu_structured
from .mmio import MatrixParseError, format_matrix, read_matrix_file
from .oracle import psd_oracle, psrp_check
from .recognize import Rejection, RejectionReason, recognize

EXIT_ACCEPTED = 0
EXIT_NOT_PSD = 1
EXIT_OUT_OF_CLASS = 2
EXIT_NOT_HERMITIAN = 3
EXIT_IO = 4

_REASON_EXIT = {
    RejectionReason.NOT_PSD: EXIT_NOT_PSD,
    RejectionReason.OUT_OF_CLASS: EXIT_OUT_OF_CLASS,
    RejectionReason.NOT_HERMITIAN: EXIT_NOT_HERMITIAN,
}
_REASON_VERDICT = {
    RejectionReason.NOT_PSD: "not_psd",
    RejectionReason.OUT_OF_CLASS: "out_of_class",
    RejectionReason.NOT_HERMITIAN: "not_hermitian",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep usage failures on our exit-code contract
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="phaseblocks", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    def common(p, figure=False):
        p.add_argument("--tol-mod", type=float, default=None, help="modulus band half-width")
        p.add_argument("--tol-herm", type=float, default=None, help="Hermitian deviation bound")
        p.add_argument("--output", type=Path, default=None, help="write the document here")
        p.add_argument("--quiet", action="store_true", help="suppress stdout document echo")
        if figure:
            p.add_argument("--figure", type=Path, default=None, help="render a figure to this file")

    p = sub.add_parser("check", help="print the verdict for a matrix file")
    p.add_argument("matrix", type=Path)
    common(p, figure=True)

    p = sub.add_parser("decompose", help="emit the certificate (or rejection report)")
    p.add_argument("matrix", type=Path)
    common(p, figure=True)

    for name in ("factor-lu", "factor-cholesky"):
        p = sub.add_parser(name, help=f"emit the structured {name.split('-')[1]} factors")
        p.add_argument("matrix", type=Path)
        common(p, figure=True)

    p = sub.add_parser("psrp", help="principal-submatrix rank property report")
    p.add_argument("matrix", type=Path)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("oracle", help="numerical PSD verdict (eigenvalues)")
    p.add_argument("matrix", type=Path)
    common(p, figure=True)

    p = sub.add_parser("gen", help="write a matrix file from a seeded certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--blocks", type=str, default=None,
                   help="comma-separated block sizes (remaining rows become zeros)")
    common(p)

    p = sub.add_parser("mutate", help="break an accepted matrix and write the result")
    p.add_argument("matrix", type=Path)
    p.add_argument("kind", choices=("phase_flip", "edge_delete", "diag_negate", "diag_zero"))
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("verify", help="check a certificate document against a matrix file")
    p.add_argument("certificate", type=Path)
    p.add_argument("matrix", type=Path)
    common(p)

    return parser


def _tolerances(args) -> ToleranceConfig:
    kwargs = {}
    if args.tol_mod is not None:
        kwargs["eps_mod"] = args.tol_mod
    if args.tol_herm is not None:
        kwargs["eps_herm"] = args.tol_herm
    return ToleranceConfig(**kwargs)


def _deliver(args, document: str) -> None:
    if args.output is not None:
        args.output.write_text(document)
    if not args.quiet and args.output is None:
        sys.stdout.write(document)


def _rejection_report(rejection: Rejection, tol: ToleranceConfig) -> RunReport:
    where = [i + 1 for i in rejection.offending_indices]
    return RunReport(
        verdict=_REASON_VERDICT[rejection.reason],
        witness=rejection.witness,
        offending_indices=rejection.offending_indices,
        diagnostics=f"rejected: {rejection.reason.value} at indices {where}",
        tolerance_used=tol,
    )


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_IO
    try:
        return _dispatch(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NotHermitianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_HERMITIAN
    except (MatrixParseError, DocumentError, CertificateError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def _dispatch(args) -> int:
    tol = _tolerances(args)
    command = args.command

    if command == "gen":
        if args.n < 1:
            raise _UsageError("--n must be >= 1")
        cert = _generated_certificate(args, tol)
        _deliver(args, format_matrix(reconstruct(cert)))
        return EXIT_ACCEPTED

    if command == "verify":
        cert = parse_certificate_document(args.certificate.read_text())
        matrix = read_matrix_file(args.matrix, tol)
        check = verify_certificate(cert, matrix)
        _deliver(args, emit(check))
        return EXIT_ACCEPTED if check.passed else EXIT_NOT_PSD

    # the remaining commands ingest one matrix file
    try:
        matrix = read_matrix_file(args.matrix, tol)
    except NotHermitianError as exc:
        report = RunReport(
            verdict="not_hermitian",
            offending_indices=(exc.row, exc.col),
            diagnostics=str(exc),
            tolerance_used=tol,
        )
        _deliver(args, "not_hermitian\n" if command == "check" else emit(report))
        return EXIT_NOT_HERMITIAN

    if command == "psrp":
        report = psrp_check(matrix, mode=args.mode, sample_count=args.samples, seed=args.seed)
        _deliver(args, emit(report))
        return EXIT_ACCEPTED if report.passed else EXIT_NOT_PSD

    if command == "oracle":
        verdict = psd_oracle(matrix)
        _deliver(args, emit(verdict))
        if args.figure is not None:
            from .plots import save_spectrum_figure

            save_spectrum_figure(verdict.eigenvalues, args.figure)
        return EXIT_ACCEPTED if verdict.psd else EXIT_NOT_PSD

    if command == "mutate":
        try:
            mutated = mutate(matrix, args.seed, args.kind)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        _deliver(args, format_matrix(mutated))
        return EXIT_ACCEPTED

    outcome = recognize(matrix)
    if isinstance(outcome, Rejection):
        report = _rejection_report(outcome, tol)
        _deliver(args, f"{report.verdict}\n" if command == "check" else emit(report))
        if command in ("check", "decompose") and getattr(args, "figure", None):
            from .plots import save_structure_figure

            save_structure_figure(matrix.entries, args.figure)
        return _REASON_EXIT[outcome.reason]

    cert: Certificate = outcome
    if command == "check":
        _deliver(args, "accepted\n")
        document_figure_cert = cert
    elif command == "decompose":
        _deliver(args, emit(RunReport(verdict="accepted", certificate=cert, tolerance_used=tol)))
        document_figure_cert = cert
    else:
        factors = lu_structured(cert) if command == "factor-lu" else cholesky_structured(cert)
        _deliver(args, emit(factors))
        if args.figure is not None:
            from .plots import save_factor_figure

            save_factor_figure(factors, args.figure)
        return EXIT_ACCEPTED
    if args.figure is not None:
        from .plots import save_structure_figure

        save_structure_figure(matrix.entries, args.figure, document_figure_cert)
    return EXIT_ACCEPTED


def _generated_certificate(args, tol: ToleranceConfig) -> Certificate:
    if args.blocks is None:
        return random_certificate(args.n, args.seed, tol=tol)
    try:
        sizes = [int(part) for part in args.blocks.split(",") if part.strip()]
    except ValueError:
        raise _UsageError(f"--blocks must be comma-separated integers, got {args.blocks!r}") from None
    if not sizes or any(k < 1 for k in sizes):
        raise _UsageError("--blocks sizes must be positive")
    if sum(sizes) > args.n:
        raise _UsageError(f"--blocks sizes sum to {sum(sizes)} > n={args.n}")
    rng = np.random.default_rng(args.seed)
    order = rng.permutation(args.n)
    blocks = []
    offset = 0
    phases = np.zeros(args.n, dtype=np.complex128)
    for k in sizes:
        members = tuple(sorted(int(i) for i in order[offset : offset + k]))
        offset += k
        blocks.append(members)
        phases[list(members)] = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=k))
        phases[members[0]] = 1.0
    zero_set = tuple(sorted(int(i) for i in order[offset:]))
    blocks.sort(key=lambda b: b[0])
    return Certificate(
        n=args.n, blocks=tuple(blocks), zero_set=zero_set, phases=phases, tolerance_used=tol
    )


def main() -> None:
    raise SystemExit(run())
