"""Argument parsing and the validated run configuration.

Precedence for precision, tolerance and worker count: flag, then
environment (``GAPFLOW_*``), then built-in default.
"""

from __future__ import annotations

import argparse
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ..core.constants import MAX_PRECISION_BITS, MIN_PRECISION_BITS, PERMUTATION_CAP
from ..core.exceptions import InvalidPrecisionError, ValidationError
from ..core.paths import app_version
from ..core.report import OutputFormat
from ..core.settings import Settings
from ..core.workers import WorkerPool
from ..determinants import GapMethod
from ..kernels import Bessel, ExactComplex, Hypergeometric, KernelSpec, exact
from ..numerics import ArithContext, ctx_new

DEFAULT_SIZE_MAX = 28
DEFAULT_T_GRID = "-4:2:0.5"
DEFAULT_REPEAT = 5

# Flags whose values may start with '-' without being negative numbers.
_RANGE_FLAGS = ("--t",)


def parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    values = tuple(exact(part) for part in text.split(",") if part.strip())
    if not values:
        raise ValidationError(f"empty list: {text!r}")
    return values


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise ValidationError(f"not a list of integers: {text!r}") from e


def parse_grid(text: str) -> tuple[Fraction, ...]:
    """Inclusive grid from "start:stop:step"."""
    pieces = text.split(":")
    if len(pieces) != 3:
        raise ValidationError(f"grid must look like start:stop:step, got {text!r}")
    start, stop, step = (exact(p) for p in pieces)
    if step <= 0 or stop < start:
        raise ValidationError(f"grid {text!r} needs step > 0 and stop >= start")
    count = int((stop - start) / step) + 1
    return tuple(start + i * step for i in range(count))


def glue_range_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--t -4:2:0.5`` as ``--t=-4:2:0.5`` so argparse keeps the value."""
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in _RANGE_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, metavar="BITS", help="Working precision")
    common.add_argument("--tol", metavar="R", help="Agreement tolerance (default 1e-20)")
    common.add_argument("--out", type=Path, metavar="PATH", help="Output file (default stdout)")
    common.add_argument(
        "--format", dest="fmt", choices=[f.value for f in OutputFormat], default="csv"
    )
    common.add_argument("--workers", type=int, metavar="N", help="Worker threads")
    common.add_argument("--verbose", action="store_true", help="Log to stderr at DEBUG level")
    return common


def _model_parser() -> argparse.ArgumentParser:
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--kernel", choices=["bessel", "hyp"], help="Model (inferred from --z)")
    model.add_argument("--eta", metavar="R[,R...]", help="Bessel parameter(s)")
    model.add_argument("--z", metavar="R|a+bi")
    model.add_argument("--zp", metavar="R|a-bi")
    model.add_argument("--xi", metavar="R")
    model.add_argument("--kmax", type=int, default=10, metavar="N")
    return model


def build_parser() -> argparse.ArgumentParser:
    common, model = _common_parser(), _model_parser()
    parser = argparse.ArgumentParser(
        prog="gapflow",
        description="Gap probabilities of discrete Bessel and 2F1 point processes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {app_version()}")
    commands = parser.add_subparsers(dest="command", required=True)

    def with_methods(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument(
            "--method",
            dest="methods",
            action="append",
            choices=[m.value for m in GapMethod],
            default=[],
            help="Route to D (repeatable)",
        )
        return p

    compute = with_methods(
        commands.add_parser("compute", parents=[common, model], help="Compute a gap table")
    )
    compute.add_argument("--density", action="store_true", help="Add first differences")
    compute.add_argument("--validate", action="store_true", help="Re-check at doubled precision")
    with_methods(
        commands.add_parser("compare", parents=[common, model], help="Cross-compare methods")
    )
    bench = with_methods(
        commands.add_parser("bench", parents=[common, model], help="Time methods")
    )
    bench.add_argument("--repeat", type=int, default=DEFAULT_REPEAT, metavar="N")

    oracle = commands.add_parser("oracle", help="Brute-force oracles against Toeplitz")
    kinds = oracle.add_subparsers(dest="target", required=True)
    for name, help_text in (
        ("lis", "Poissonized LIS by permutation enumeration"),
        ("plancherel", "Poissonized Plancherel partition sum"),
        ("zmeasure", "z-measure partition sum"),
    ):
        p = kinds.add_parser(name, parents=[common, model], help=help_text)
        p.add_argument("--nmax", type=int, default=PERMUTATION_CAP, metavar="N")
        p.add_argument("--sizemax", type=int, default=DEFAULT_SIZE_MAX, metavar="N")

    limits = commands.add_parser("limits", help="Scaling-limit trend tables")
    targets = limits.add_subparsers(dest="target", required=True)
    dpv = targets.add_parser("dpv-to-dpii", parents=[common, model], help="z = z' = N -> infinity")
    dpv.add_argument("--N", dest="n_list", default="10,20,40", metavar="N[,N...]")
    dpii = targets.add_parser("dpii-to-pii", parents=[common, model], help="eta -> infinity")
    dpii.add_argument("--t", dest="t_grid", default=DEFAULT_T_GRID, metavar="a:b:step")
    return parser


def _build_model(
    kernel: str,
    eta: tuple[Fraction, ...],
    z: ExactComplex | None,
    zprime: ExactComplex | None,
    xi: Fraction | None,
    several: bool = False,
) -> KernelSpec | None:
    """The model spec, or None when several Bessel scales are requested."""
    if kernel == "hyp":
        if z is None or zprime is None or xi is None:
            raise ValidationError("--kernel hyp needs --z, --zp and --xi")
        return Hypergeometric(z, zprime, xi)
    if not eta:
        raise ValidationError("--kernel bessel needs --eta")
    if several:
        for value in eta:
            Bessel(value)
        return None
    if len(eta) != 1:
        raise ValidationError(f"expected a single --eta, got {len(eta)} values")
    return Bessel(eta[0])


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one command."""

    command: str
    target: str | None
    kernel: str
    eta: tuple[Fraction, ...]
    z: ExactComplex | None
    zprime: ExactComplex | None
    xi: Fraction | None
    methods: tuple[GapMethod, ...]
    k_max: int
    precision_bits: int
    tol: str
    fmt: OutputFormat
    out: Path | None = None
    density: bool = False
    validate: bool = False
    workers: int = 1
    n_max: int = PERMUTATION_CAP
    size_max: int = DEFAULT_SIZE_MAX
    n_list: tuple[int, ...] = ()
    t_grid: tuple[Fraction, ...] = ()
    repeat: int = DEFAULT_REPEAT
    verbose: bool = False
    model: KernelSpec | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Settings | None = None) -> RunConfig:
        settings = settings or Settings()
        precision = args.precision if args.precision is not None else settings.get_precision()
        if not MIN_PRECISION_BITS <= precision <= MAX_PRECISION_BITS:
            raise InvalidPrecisionError(
                f"precision must lie in [{MIN_PRECISION_BITS}, {MAX_PRECISION_BITS}] bits, "
                f"got {precision}"
            )
        tol = args.tol if args.tol is not None else settings.get_tol()
        if exact(tol) <= 0:
            raise ValidationError(f"tol must be > 0, got {tol}")
        workers = args.workers if args.workers is not None else settings.get_workers()
        if args.kmax < 0:
            raise ValidationError(f"--kmax must be >= 0, got {args.kmax}")

        target = getattr(args, "target", None)
        kernel = args.kernel
        if kernel is None:
            kernel = "hyp" if args.z is not None or target == "zmeasure" else "bessel"
        eta = parse_fraction_list(args.eta) if args.eta else ()
        z = ExactComplex.parse(args.z) if args.z is not None else None
        zprime = ExactComplex.parse(args.zp) if args.zp is not None else None
        xi = exact(args.xi) if args.xi is not None else None
        return cls(
            command=args.command,
            target=target,
            kernel=kernel,
            eta=eta,
            z=z,
            zprime=zprime,
            xi=xi,
            methods=tuple(GapMethod.parse(m) for m in getattr(args, "methods", [])),
            k_max=args.kmax,
            precision_bits=precision,
            tol=str(tol),
            fmt=OutputFormat(args.fmt),
            out=args.out,
            density=getattr(args, "density", False),
            validate=getattr(args, "validate", False),
            workers=max(1, workers),
            n_max=getattr(args, "nmax", PERMUTATION_CAP),
            size_max=getattr(args, "sizemax", DEFAULT_SIZE_MAX),
            n_list=parse_int_list(args.n_list) if hasattr(args, "n_list") else (),
            t_grid=parse_grid(args.t_grid) if hasattr(args, "t_grid") else (),
            repeat=getattr(args, "repeat", DEFAULT_REPEAT),
            verbose=args.verbose,
            model=_build_model(kernel, eta, z, zprime, xi, several=target == "dpii-to-pii"),
        )

    @property
    def spec(self) -> KernelSpec:
        if self.model is None:
            raise ValidationError(f"{self.command} {self.target or ''} takes no single model")
        return self.model

    @property
    def ctx(self) -> ArithContext:
        return ctx_new(self.precision_bits)

    def pool(self) -> WorkerPool:
        return WorkerPool(self.workers)

    def echo(self) -> dict[str, str]:
        """Configuration as strings, for the JSON ``config`` object."""
        echo = {
            "command": self.command if self.target is None else f"{self.command} {self.target}",
            "kernel": self.kernel,
            "k_max": str(self.k_max),
            "precision_bits": str(self.precision_bits),
            "tol": self.tol,
        }
        if self.model is not None:
            echo.update(self.model.describe())
        elif self.eta:
            echo["eta"] = ",".join(str(e) for e in self.eta)
        if self.methods:
            echo["methods"] = ",".join(self.methods)
        return echo
