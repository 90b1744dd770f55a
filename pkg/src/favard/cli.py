"""Command line surface: decompose, reconstruct, verify, roundtrip.

Everything is configured by flags (no environment variables), reports are
JSON on stdout plus a human summary on stderr, and files are written
atomically.  Exit codes are the API: 0 all checks passed, 1 a verification
failed, 2 bad input or usage.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from ._util import atomic_write_text
from .errors import FavardError
from .fock import build_fock, moment_of_word
from .jacobi import analyze, jacobi_file_text, load_jacobi_file, verify_favard_conditions
from .mindex import enumerate_level
from .moments import (
    CATALOG_MEASURES,
    MomentFunctional,
    from_catalog,
    from_file,
    from_samples,
    moment_file_text,
)

__all__ = ["RunConfig", "main", "cmd_decompose", "cmd_reconstruct", "cmd_verify", "cmd_roundtrip"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


@dataclass
class RunConfig:
    command: str
    measure: str = None
    atoms: str = None
    moments: str = None
    samples: str = None
    jacobi: str = None
    d: int = None
    N: int = None
    backend: str = "exact"
    tol: float = linalg.DEFAULT_TOL
    out: str = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.N is not None and self.N < 0:
            raise ValueError("N must be >= 0")


def _parser():
    p = argparse.ArgumentParser(
        prog="favard",
        description="Jacobi sequences of moment functionals and their Fock reconstruction",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, need_n=True, jacobi_input=False):
        src = sp.add_argument_group("input")
        src.add_argument("--measure", choices=CATALOG_MEASURES, help="catalog measure name")
        src.add_argument("--atoms", help="JSON list of [point, weight] pairs for --measure atoms")
        src.add_argument("--moments", help="moment file (JSON)")
        src.add_argument("--samples", help="sample file (JSON with points and optional weights)")
        if jacobi_input:
            src.add_argument("--jacobi", help="Jacobi file (JSON)")
        sp.add_argument("--d", type=int, help="dimension (required with --measure)")
        sp.add_argument("--N", type=int, required=need_n, help="maximum gradation level")
        sp.add_argument("--backend", choices=("exact", "float"), default="exact")
        sp.add_argument("--tol", type=float, default=linalg.DEFAULT_TOL)
        sp.add_argument("--out", help="output path")

    sp = sub.add_parser("decompose", help="measure -> Jacobi file")
    add_common(sp)

    sp = sub.add_parser("reconstruct", help="Jacobi file -> moment file")
    sp.add_argument("--jacobi", required=True, help="Jacobi file (JSON)")
    sp.add_argument("--tol", type=float, default=linalg.DEFAULT_TOL)
    sp.add_argument("--out", help="output path for the moment file")

    sp = sub.add_parser("verify", help="run every verification suite")
    add_common(sp, need_n=False, jacobi_input=True)

    sp = sub.add_parser("roundtrip", help="decompose, rebuild, compare moments")
    add_common(sp)
    return p


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        measure=getattr(args, "measure", None),
        atoms=getattr(args, "atoms", None),
        moments=getattr(args, "moments", None),
        samples=getattr(args, "samples", None),
        jacobi=getattr(args, "jacobi", None),
        d=getattr(args, "d", None),
        N=getattr(args, "N", None),
        backend=getattr(args, "backend", "exact"),
        tol=getattr(args, "tol", linalg.DEFAULT_TOL),
        out=getattr(args, "out", None),
    )


def _parse_atom_scalar(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, bool):
        raise ValueError(f"bad scalar {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(str(v))
    raise ValueError(f"bad scalar {v!r}")


def _load_samples_file(path, max_degree, backend):
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or not set(doc) <= {"points", "weights"} or "points" not in doc:
        raise ValueError("sample file must be an object with 'points' and optional 'weights'")
    points = doc["points"]
    weights = doc.get("weights")
    if backend == "exact":
        points = [[_parse_atom_scalar(x) for x in p] for p in points]
        if weights is not None:
            weights = [_parse_atom_scalar(w) for w in weights]
    return from_samples(points, max_degree, weights=weights, backend=backend)


def _functional_from_config(cfg: RunConfig, max_degree: int) -> MomentFunctional:
    chosen = [x for x in (cfg.measure, cfg.moments, cfg.samples) if x]
    if len(chosen) != 1:
        raise ValueError("choose exactly one of --measure, --moments, --samples")
    if cfg.measure:
        if cfg.d is None:
            raise ValueError("--measure needs --d")
        atoms = None
        if cfg.measure == "atoms":
            if not cfg.atoms:
                raise ValueError("--measure atoms needs --atoms")
            parsed = json.loads(cfg.atoms)
            atoms = [
                ([_parse_atom_scalar(x) for x in point], _parse_atom_scalar(weight))
                for point, weight in parsed
            ]
        return from_catalog(
            cfg.measure, cfg.d, max_degree, atoms=atoms, backend=cfg.backend
        )
    if cfg.moments:
        phi = from_file(cfg.moments)
        if cfg.d is not None and phi.d != cfg.d:
            raise ValueError(f"--d {cfg.d} does not match the file dimension {phi.d}")
        if cfg.backend != phi.backend:
            raise ValueError(
                f"--backend {cfg.backend} does not match the file scalar family"
            )
        return phi
    return _load_samples_file(cfg.samples, max_degree, cfg.backend)


def _emit(cfg, payload, summary_lines):
    text = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if cfg.out and cfg.command in ("verify", "roundtrip"):
        atomic_write_text(cfg.out, text)
    for line in summary_lines:
        print(line, file=sys.stderr)


def cmd_decompose(cfg: RunConfig) -> int:
    # catalog sources can always supply the one extra degree the top-level
    # preservation block needs; file sources use whatever they have
    if cfg.measure:
        phi = _functional_from_config(cfg, 2 * cfg.N + 1)
    else:
        phi = _functional_from_config(cfg, 2 * cfg.N)
        if phi.max_degree < 2 * cfg.N:
            raise ValueError(
                f"decomposition to level {cfg.N} needs moments to degree {2 * cfg.N}, "
                f"file provides {phi.max_degree}"
            )
    if cfg.out is None:
        raise ValueError("decompose needs --out for the Jacobi file")
    ma = analyze(phi, cfg.N, cfg.tol, with_roundtrip=False)
    atomic_write_text(cfg.out, jacobi_file_text(ma.jacobi))
    payload = ma.to_dict()
    payload["jacobi_file"] = cfg.out
    summary = [
        f"decomposed {ma.source} to level {ma.N} [{ma.backend}]",
        f"level ranks: {ma.ranks} (termination: {ma.termination})",
        f"wrote {cfg.out}",
    ] + [r.summary() for r in ma.reports.values() if not r.ok]
    sys.stdout.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    for line in summary:
        print(line, file=sys.stderr)
    return EXIT_OK if ma.ok else EXIT_CHECK_FAILED


def cmd_reconstruct(cfg: RunConfig) -> int:
    js = load_jacobi_file(cfg.jacobi)
    if cfg.out is None:
        raise ValueError("reconstruct needs --out for the moment file")
    fock, ops = build_fock(js, cfg.tol)
    top = js.max_word_length()
    values = {}
    for degree in range(top + 1):
        for m in enumerate_level(js.d, degree):
            word = []
            for j, count in enumerate(m, start=1):
                word.extend([j] * count)
            values[m] = moment_of_word(fock, ops, word)
    try:
        phi = MomentFunctional(
            d=js.d,
            max_degree=top,
            values=values,
            backend=js.backend,
            source=f"reconstructed:{cfg.jacobi}",
        )
    except ValueError as exc:
        raise FavardError(f"reconstructed moments do not form a state: {exc}") from exc
    atomic_write_text(cfg.out, moment_file_text(phi))
    payload = {
        "source": cfg.jacobi,
        "d": js.d,
        "N": js.N,
        "max_degree": top,
        "backend": js.backend,
        "moment_file": cfg.out,
    }
    sys.stdout.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    print(f"reconstructed moments to degree {top}; wrote {cfg.out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.jacobi:
        js = load_jacobi_file(cfg.jacobi)
        report = verify_favard_conditions(js, cfg.tol)
        adjoint_note = None
        if report.ok:
            try:
                build_fock(js, cfg.tol)
            except FavardError as exc:
                adjoint_note = str(exc)
        payload = report.to_dict()
        if adjoint_note:
            payload["ok"] = False
            payload["adjoint_error"] = adjoint_note
        _emit(cfg, payload, [report.summary()])
        if not payload["ok"]:
            bad = report.first_failure()
            name = bad.label if bad else adjoint_note
            print(f"verification failed: {name}", file=sys.stderr)
            return EXIT_CHECK_FAILED
        return EXIT_OK
    if cfg.N is None:
        raise ValueError("verify needs --N with a measure input")
    phi = _functional_from_config(cfg, 2 * cfg.N + 1 if cfg.measure else 2 * cfg.N)
    ma = analyze(phi, cfg.N, cfg.tol, with_roundtrip=True)
    _emit(cfg, ma.to_dict(), [r.summary() for r in ma.reports.values()])
    if not ma.ok:
        for r in ma.reports.values():
            bad = r.first_failure()
            if bad is not None:
                print(f"verification failed: {r.name}: {bad.label}", file=sys.stderr)
                return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_roundtrip(cfg: RunConfig) -> int:
    from .fock import roundtrip_report

    phi = _functional_from_config(cfg, 2 * cfg.N + 1 if cfg.measure else 2 * cfg.N)
    report = roundtrip_report(phi, cfg.N, cfg.tol)
    _emit(cfg, report.to_dict(), [report.summary()])
    if not report.ok:
        bad = report.first_failure()
        print(f"roundtrip failed: {bad.label}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


_COMMANDS = {
    "decompose": cmd_decompose,
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
    "roundtrip": cmd_roundtrip,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _config(args)
        return _COMMANDS[cfg.command](cfg)
    except FavardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
