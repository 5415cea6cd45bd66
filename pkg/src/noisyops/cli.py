"""Command-line entry point: ``noisyops <command> [flags]``.

Data goes to standard output (or ``--output``), diagnostics to standard
error. Exit codes: 0 success, 2 usage error, 3 unreadable input, 4 channel
not unital, 5 channel not CP / not TP, 6 requested size below the Kraus
rank, 7 verification distance above ``--tol``, 8 target not majorized,
9 theorem violation, 10 any other numerical failure.
"""
import argparse
import sys

import numpy as np

from . import jsonio
from .canonical import mixed_unitary_decomposition
from .channels import MixedUnitaryDecomposition, validate
from .dilation import TOL_VERIFY, noisy_realization, verify_noisy_representation
from .errors import (
    KTooSmall,
    NoisyOpsError,
    NotCP,
    NotMajorized,
    NotPSD,
    NotTracePreserving,
    NotUnital,
    ParseError,
    TheoremViolation,
)
from .rebalance import reweight
from .sampling import haar_unitary_channel, random_mixed_unitary, random_unital_choi, trial_rng
from .schmidt import rank_census

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_NOT_UNITAL = 4
EXIT_NOT_CP = 5
EXIT_K_TOO_SMALL = 6
EXIT_VERIFY = 7
EXIT_NOT_MAJORIZED = 8
EXIT_THEOREM = 9
EXIT_OTHER = 10

RANDOM_KINDS = ("haar_unitary_channel", "random_mixed_unitary", "random_unital_choi")


class VerificationFailed(NoisyOpsError):
    pass


def _exit_code(exc: Exception) -> int:
    for kind, code in (
        (ParseError, EXIT_PARSE),
        (NotUnital, EXIT_NOT_UNITAL),
        ((NotCP, NotPSD, NotTracePreserving), EXIT_NOT_CP),
        (KTooSmall, EXIT_K_TOO_SMALL),
        (VerificationFailed, EXIT_VERIFY),
        (NotMajorized, EXIT_NOT_MAJORIZED),
        (TheoremViolation, EXIT_THEOREM),
    ):
        if isinstance(exc, kind):
            return code
    return EXIT_OTHER


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_channel(path):
    if not path:
        raise ParseError("--input is required")
    try:
        rep = jsonio.channel_from_json(jsonio.load_file(path))
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    report = validate(rep)
    if not report.unital:
        raise NotUnital(f"input channel is not unital (violation {report.worst_violations['unital']:.3e})")
    if not report.completely_positive:
        raise NotCP(f"input channel is not completely positive (violation {report.worst_violations['cp']:.3e})")
    if not report.trace_preserving:
        raise NotTracePreserving(f"input channel is not trace preserving (violation {report.worst_violations['tp']:.3e})")
    return rep


def cmd_decompose(args) -> int:
    rep = _read_channel(args.input)
    _emit(jsonio.dumps(jsonio.channel_to_json(mixed_unitary_decomposition(rep))), args.output)
    return EXIT_OK


def cmd_rebalance(args) -> int:
    rep = _read_channel(args.input)
    if not isinstance(rep, MixedUnitaryDecomposition):
        rep = mixed_unitary_decomposition(rep)
    if args.target:
        try:
            target = [float(x) for x in args.target.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad --target: {exc}") from exc
    else:
        target = np.full(len(rep), 1.0 / len(rep))
    out, steps = reweight(rep, target)
    payload = jsonio.channel_to_json(out)
    payload["steps"] = jsonio.steps_to_json(steps)
    _emit(jsonio.dumps(payload), args.output)
    return EXIT_OK


def cmd_dilate(args) -> int:
    rep = _read_channel(args.input)
    res = noisy_realization(rep, args.env_dim)
    payload = jsonio.dilation_to_json(res.dilation)
    if args.output:
        _emit(jsonio.dumps(payload), args.output)
        print(f"distance {res.distance!r}")
    else:
        payload["distance"] = res.distance
        _emit(jsonio.dumps(payload), None)
    if not res.distance <= args.tol:
        raise VerificationFailed(f"Choi distance {res.distance:.3e} exceeds {args.tol:.1e}")
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = _read_channel(args.input)
    if not args.dilation:
        raise ParseError("--dilation is required")
    try:
        dil = jsonio.dilation_from_json(jsonio.load_file(args.dilation))
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    dist = verify_noisy_representation(rep, dil, dil.env_dim)
    print(f"distance {dist!r}")
    if not dist <= args.tol:
        raise VerificationFailed(f"Choi distance {dist:.3e} exceeds {args.tol:.1e}")
    return EXIT_OK


def cmd_census(args) -> int:
    hist = rank_census(args.dim, args.env_dim, args.trials, args.seed)
    text = hist.to_csv() if args.format == "csv" else jsonio.dumps(hist.to_json())
    _emit(text, args.output)
    if args.dim == 2 and args.env_dim == 2 and hist.counts.get(3, 0):
        raise TheoremViolation("Kraus rank 3 observed for a 2-noisy qubit operation")
    return EXIT_OK


def cmd_random(args) -> int:
    rng = trial_rng(args.seed)
    if args.kind == "haar_unitary_channel":
        rep = haar_unitary_channel(rng)
    elif args.kind == "random_mixed_unitary":
        rep = random_mixed_unitary(args.env_dim, rng)
    else:
        rep = random_unital_choi(rng, args.env_dim)
    _emit(jsonio.dumps(jsonio.channel_to_json(rep)), args.output)
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noisyops", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, env_default=None):
        p = sub.add_parser(name, help=help_text, allow_abbrev=False)
        p.set_defaults(func=func)
        p.add_argument("--output", help="write data here instead of standard output")
        if env_default is not None:
            p.add_argument("--env-dim", "-k", type=_positive_int, default=env_default)
        return p

    p = add("decompose", cmd_decompose, "mixed-unitary decomposition of a unital qubit channel")
    p.add_argument("--input", required=True)

    p = add("rebalance", cmd_rebalance, "reweight a mixed-unitary decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--target", help="comma-separated target weights (default: uniform)")

    p = add("dilate", cmd_dilate, "build a k-noisy dilation and verify it", env_default=4)
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=TOL_VERIFY)

    p = add("verify", cmd_verify, "distance between a channel and a dilation")
    p.add_argument("--input", required=True)
    p.add_argument("--dilation", required=True)
    p.add_argument("--tol", type=float, default=TOL_VERIFY)

    p = add("census", cmd_census, "Kraus-rank census of Haar-random n-noisy operations", env_default=2)
    p.add_argument("--dim", type=_positive_int, default=2)
    p.add_argument("--trials", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("random", cmd_random, "generate a seeded random channel", env_default=4)
    p.add_argument("--kind", choices=RANDOM_KINDS, required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoisyOpsError as exc:
        print(f"noisyops {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
