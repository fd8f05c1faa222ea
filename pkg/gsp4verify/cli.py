#!/usr/bin/env python3
"""
gsp4verify CLI - compute the explicit local quantities and run the verification suites
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .algebra.linear import charpoly
from .branching import (
    DEFAULT_DEGREE_BUDGET,
    FIRST_SLOT,
    SIDES,
    branching_table,
    projection_coefficient,
)
from .components import ReportExporter, SCHEMA_VERSION
from .config import OUTPUT_FORMATS, VerifyConfig
from .eisenstein import (
    ONE_PARAM_CRITICAL,
    QEXP_OPERATORS,
    TWO_PARAM,
    EisensteinDatum,
    FamilySpec,
    WeightCharacter,
    eisenstein_E_padic,
    eisenstein_F,
    family_qexp,
    qexp_operator,
    specialize_family,
)
from .errors import ConfigError, Gsp4VerifyError
from .hecke_data import HeckeParams, TwistData, constants_report, ordinarity, trivial_zero_check
from .log import get_logger
from .parahoric import (
    OPERATORS,
    ParahoricTag,
    export_cosets,
    genestier_tilouine_discriminator,
    hecke_matrix,
)
from .parahoric.induced import NORMALIZATIONS
from .schwartz import SLOT_TAGS, UnitCharacter
from .verify import KLINGEN_SLOT_PAIRS, SUITES, run_checks
from .whittaker import cross_path_table, eigenvector_normalisations
from .zeta import ZetaRequest, klingen_ratio, klingen_zeta

log = get_logger("cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2

# Table-shaped commands print CSV unless --format says otherwise.
CSV_COMMANDS = ("whittaker", "eis-qexp")


# ============================================================================
# Run configuration
# ============================================================================

@dataclass
class RunConfig:
    """Command-line arguments layered over ~/.gsp4verify/settings.json."""
    subcommand: str
    primes: List[int]
    seed: int
    truncation: int
    output_format: str
    jobs: int = 1
    timings: bool = False
    output: Optional[Path] = None
    specialization: Dict[str, Fraction] = field(default_factory=dict)
    settings: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace,
                  config: Optional[VerifyConfig] = None) -> "RunConfig":
        """
        Raises:
            ConfigError: bad settings file, bad flag values
        """
        config = config or VerifyConfig()
        overrides = {
            "primes": _primes(args),
            "seed": getattr(args, "seed", None),
            "truncation": getattr(args, "N", None),
            "moduli_samples": getattr(args, "samples", None),
            "branching_degree_budget": getattr(args, "budget", None),
            "output_format": getattr(args, "format", None),
        }
        settings = config.load_settings(overrides)
        output_format = settings["output_format"]
        if getattr(args, "format", None) is None and args.command in CSV_COMMANDS:
            output_format = "csv"
        jobs = getattr(args, "jobs", None)
        jobs = 1 if jobs is None else jobs
        if jobs < 1:
            raise ConfigError(f"--jobs must be at least 1, got {jobs}")
        return cls(
            subcommand=args.command,
            primes=settings["primes"],
            seed=settings["seed"],
            truncation=settings["truncation"],
            output_format=output_format,
            jobs=jobs,
            timings=getattr(args, "timings", False),
            output=Path(args.output) if getattr(args, "output", None) else None,
            specialization=parse_specialization(getattr(args, "spec", None)),
            settings=settings,
        )

    @property
    def p(self) -> int:
        return self.primes[0]


def _primes(args: argparse.Namespace) -> Optional[List[int]]:
    values = getattr(args, "p", None)
    if not values:
        return None
    primes = []
    for chunk in values:
        for item in str(chunk).split(","):
            try:
                primes.append(int(item))
            except ValueError:
                raise ConfigError(f"--p expects integers, got {item!r}") from None
    for p in primes:
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ConfigError(f"--p expects primes, got {p}")
    return sorted(set(primes))


def parse_specialization(text: Optional[str]) -> Dict[str, Fraction]:
    """
    "a=1/2,b=3,c=-5" -> {"a": 1/2, "b": 3, "c": -5}.

    Raises:
        ConfigError: malformed assignment or unknown indeterminate
    """
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in ("a", "b", "c"):
            raise ConfigError(f"--spec expects a=..,b=..,c=.., got {item!r}")
        try:
            out[name] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"--spec value {value!r} is not a rational number") from None
    return out


def hecke_params(cfg: RunConfig, r1: int, r2: int) -> HeckeParams:
    params = HeckeParams.symbolic(cfg.p, r1, r2)
    return params.specialize(cfg.specialization) if cfg.specialization else params


# ============================================================================
# Output
# ============================================================================

def render(payload: Dict[str, Any], cfg: RunConfig, columns: Sequence[str] = (),
           rows: Sequence[Sequence[Any]] = ()) -> str:
    """JSON with sorted keys, or CSV of the given rows."""
    if cfg.output_format == "csv":
        if not columns:
            raise ConfigError(f"{cfg.subcommand} has no tabular output; use --format json")
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        return buffer.getvalue()
    if cfg.output_format == "markdown":
        raise ConfigError("markdown output is only available for verify")
    return json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True) + "\n"


def emit(text: str, cfg: RunConfig):
    if cfg.output is not None:
        cfg.output.write_text(text, encoding="utf-8")
        log.debug("Wrote output", path=str(cfg.output))
    else:
        sys.stdout.write(text)


# ============================================================================
# Subcommands
# ============================================================================

def cmd_constants(args, cfg: RunConfig) -> int:
    params = hecke_params(cfg, args.r1, args.r2)
    report = constants_report(params, args.q, args.r, args.c1, args.c2, args.shifts)
    if params.is_rational():
        report["ordinarity"] = ordinarity(params).to_dict()
        report["trivial_zero"] = trivial_zero_check(params).to_dict()
    emit(render(report, cfg), cfg)
    return EXIT_OK


def cmd_whittaker(args, cfg: RunConfig) -> int:
    params = hecke_params(cfg, args.r1, args.r2)
    table = cross_path_table(params, args.bound)
    rows = [
        (t.e1, t.e2, t.e0, str(closed), str(recursion), closed == recursion)
        for t, closed, recursion in table
    ]
    payload = {
        "params": params.to_dict(),
        "bound": args.bound,
        "values": [
            {"t": [e1, e2, e0], "closed_form": closed, "recursion": rec, "match": match}
            for e1, e2, e0, closed, rec, match in rows
        ],
        "normalisations": {k: str(v) for k, v in eigenvector_normalisations(params).items()},
    }
    emit(render(payload, cfg, ("e1", "e2", "e0", "closed_form", "recursion", "match"), rows), cfg)
    return EXIT_OK


def cmd_hecke_matrix(args, cfg: RunConfig) -> int:
    params = hecke_params(cfg, args.r1, args.r2)
    tag = ParahoricTag.from_name(args.level)
    matrix = hecke_matrix(tag, args.op, params, args.normalization)
    payload: Dict[str, Any] = {
        "params": params.to_dict(),
        "level": tag.value,
        "operator": args.op,
        "normalization": args.normalization,
        "matrix": [[str(x) for x in row] for row in matrix],
        "charpoly": [str(c) for c in charpoly(matrix)],
    }
    if args.cosets:
        reps = export_cosets(tag, OPERATORS.get(args.op).torus, cfg.p, args.precision)
        payload["cosets"] = [m.to_list() for m in reps]
    if tag is ParahoricTag.KLINGEN and not params.is_rational():
        payload["trace"] = genestier_tilouine_discriminator(params).to_dict()
    emit(render(payload, cfg), cfg)
    return EXIT_OK


def _character(p: int, index: Optional[int]) -> Optional[UnitCharacter]:
    return None if index is None else UnitCharacter(p, index)


def cmd_zeta_table(args, cfg: RunConfig) -> int:
    params = hecke_params(cfg, args.r1, args.r2)
    twist = TwistData.from_chi2(params, args.chi2)
    if args.slot1 or args.slot2:
        pairs = [(args.slot1 or "dep", args.slot2 or "dep")]
    else:
        pairs = list(KLINGEN_SLOT_PAIRS)
    p = params.p
    nu1, nu2 = _character(p, args.nu1), _character(p, args.nu2)
    # rho defaults to nu1 nu2
    rho = _character(p, args.rho)
    if rho is None and (nu1 or nu2):
        rho = (nu1 or UnitCharacter.trivial(p)) * (nu2 or UnitCharacter.trivial(p))
    rows = []
    for slot1, slot2 in pairs:
        req = ZetaRequest(
            params, twist, args.q, args.r, slot1, slot2,
            _character(p, args.mu1), nu1, _character(p, args.mu2), nu2, rho,
        )
        rows.append({
            "slots": req.slots(),
            "Ztilde": str(klingen_zeta(req)),
            "normalized_ratio": str(klingen_ratio(req)),
        })
    payload = {"params": params.to_dict(), "q": args.q, "r": args.r, "rows": rows}
    table = [(row["slots"], row["Ztilde"], row["normalized_ratio"]) for row in rows]
    emit(render(payload, cfg, ("slots", "Ztilde", "normalized_ratio"), table), cfg)
    return EXIT_OK


def cmd_eis_qexp(args, cfg: RunConfig) -> int:
    datum = EisensteinDatum.named(args.tag, cfg.p)
    if args.series == "F":
        f = eisenstein_F(args.k, datum, cfg.truncation)
    else:
        f = eisenstein_E_padic(args.k, datum, cfg.truncation)
    for op in args.op or ():
        f = qexp_operator(op, f, datum)
    rows = f.rows()
    payload = {
        "p": f.p,
        "weight": f.weight,
        "label": f.label,
        "operators": args.op or [],
        "coefficients": {str(n): c for n, c in rows},
    }
    emit(render(payload, cfg, ("n", "coefficient"), rows), cfg)
    return EXIT_OK


def cmd_family_eval(args, cfg: RunConfig) -> int:
    spec = FamilySpec(cfg.p, args.kind, ell=args.ell)
    family = family_qexp(spec, cfg.truncation)
    if args.k1 is None:
        emit(render({"family": family.to_dict()}, cfg), cfg)
        return EXIT_OK
    first = WeightCharacter(args.k1, _character(cfg.p, args.chi1))
    second = None
    if args.k2 is not None:
        second = WeightCharacter(args.k2, _character(cfg.p, args.chi2))
    f = specialize_family(family, first, second)
    rows = f.rows()[1:]
    payload = {"p": f.p, "weight": f.weight, "label": f.label,
               "coefficients": {str(n): c for n, c in rows}}
    emit(render(payload, cfg, ("n", "coefficient"), rows), cfg)
    return EXIT_OK


def cmd_branching(args, cfg: RunConfig) -> int:
    budget = cfg.settings["branching_degree_budget"]
    if args.tuple:
        r1, r2, q, r = args.tuple
        entries = [projection_coefficient(r1, r2, q, r, side, budget)
                   for side in ([args.side] if args.side else SIDES)]
    else:
        entries = branching_table(budget)
    payload = {"budget": budget, "entries": [e.to_dict() for e in entries]}
    rows = [
        (f"{e.r1},{e.r2},{e.q},{e.r}", e.side, e.index, str(e.closed_form), str(e.brute_force),
         e.match, e.killing_depth)
        for e in entries
    ]
    columns = ("tuple", "side", "index", "closed_form", "brute_force", "match", "killing_depth")
    emit(render(payload, cfg, columns, rows), cfg)
    return EXIT_OK if all(e.match for e in entries) else EXIT_CHECK_FAILED


def cmd_verify(args, cfg: RunConfig) -> int:
    tracker = run_checks([args.suite], cfg.primes, cfg.settings, cfg.jobs)
    run = {"suite": args.suite, "primes": cfg.primes, "seed": cfg.seed}
    exporter = ReportExporter(tracker.get_history(), run, cfg.timings)
    emit(exporter.render(cfg.output_format), cfg)
    if not tracker.passed:
        log.warning("Checks failed", failed=tracker.failed())
        return EXIT_CHECK_FAILED
    return EXIT_OK


COMMANDS = {
    "constants": cmd_constants,
    "whittaker": cmd_whittaker,
    "hecke-matrix": cmd_hecke_matrix,
    "zeta-table": cmd_zeta_table,
    "eis-qexp": cmd_eis_qexp,
    "family-eval": cmd_family_eval,
    "branching": cmd_branching,
    "verify": cmd_verify,
}


# ============================================================================
# Argument parsing
# ============================================================================

def _common(parser: argparse.ArgumentParser, weights: bool = False, qr: bool = False):
    parser.add_argument('--p', action='append', metavar='P',
                        help='Prime(s); repeat or comma-separate (default: settings "primes")')
    parser.add_argument('--format', choices=OUTPUT_FORMATS, default=None,
                        help='Output format (default: settings "output_format")')
    parser.add_argument('--output', '-o', metavar='FILE', help='Write to FILE instead of stdout')
    if weights:
        parser.add_argument('--r1', type=int, default=2, help='Weight r1 (default: 2)')
        parser.add_argument('--r2', type=int, default=1, help='Weight r2 (default: 1)')
        parser.add_argument('--spec', metavar='a=..,b=..,c=..',
                            help='Specialize alpha, beta, gamma to rationals')
    if qr:
        parser.add_argument('--q', type=int, default=0, help='Critical index q (default: 0)')
        parser.add_argument('--r', type=int, default=1, help='Critical index r (default: 1)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsp4verify",
        description="gsp4verify - exact verification of GSp4 local computations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  gsp4verify constants --r1 2 --r2 1 --q 0 --r 1        # Euler factors and constants
  gsp4verify hecke-matrix --p 2 --level kl --op U2       # Klingen U2 matrix
  gsp4verify zeta-table --p 3 --r1 2 --r2 1              # the four Klingen ratios
  gsp4verify eis-qexp --p 3 --tag crit --k 2 --op U_p    # U_p F on q-expansions
  gsp4verify verify all --p 2 --seed 7 -o report.json    # full suite at p=2
  gsp4verify verify corr-identity --p 3 --samples 10     # moduli identity at p=3

Configuration:
  Config directory: ~/.gsp4verify/ (override with GSP4VERIFY_HOME)
  Settings: ~/.gsp4verify/settings.json (auto-created on first run)
  Logs: ./logs/gsp4verify.jsonl (LOG_LEVEL=INFO to see check outcomes)

Exit status: 0 on success, 1 if a check fails, 2 on invalid input.
        """
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("constants", help="Euler factors and assembled constants")
    _common(p, weights=True, qr=True)
    p.add_argument('--c1', type=int, default=7, help='Auxiliary c1 > 1 (default: 7)')
    p.add_argument('--c2', type=int, default=7, help='Auxiliary c2 > 1 (default: 7)')
    p.add_argument('--shifts', type=int, default=None,
                   help='Also emit E_Sieg(Pi(n), q, r) for n = 0..SHIFTS')

    p = sub.add_parser("whittaker", help="Spherical Whittaker values by both paths")
    _common(p, weights=True)
    p.add_argument('--bound', type=int, default=3, help='Exponent box |e_i| <= BOUND (default: 3)')

    p = sub.add_parser("hecke-matrix", help="Parahoric Hecke operator matrices")
    _common(p, weights=True)
    p.add_argument('--level', default='kl', help='hyp, kl, sieg or iw (default: kl)')
    p.add_argument('--op', default='U2', choices=OPERATORS.list_names(), help='Operator name')
    p.add_argument('--normalization', choices=NORMALIZATIONS, default='unitary')
    p.add_argument('--cosets', action='store_true', help='Export left-coset representatives')
    p.add_argument('--precision', type=int, default=None,
                   help='Reduce exported cosets mod p^PRECISION')

    p = sub.add_parser("zeta-table", help="Klingen zeta values and normalized ratios")
    _common(p, weights=True, qr=True)
    p.add_argument('--slot1', choices=SLOT_TAGS, help='First Schwartz slot (default: all pairs)')
    p.add_argument('--slot2', choices=SLOT_TAGS, help='Second Schwartz slot')
    p.add_argument('--chi2', type=int, default=1, help='chi2(p) of the unramified twist')
    for name in ("mu1", "nu1", "mu2", "nu2", "rho"):
        p.add_argument(f'--{name}', type=int, default=None, metavar='INDEX',
                       help=f'Character index of {name} on (Z/p^2)^x')

    p = sub.add_parser("eis-qexp", help="Eisenstein q-expansions and operators")
    _common(p)
    p.add_argument('--tag', default='crit', choices=("sph", "crit", "dep"))
    p.add_argument('--series', default='F', choices=("F", "E"),
                   help='F = classical F^(k+2), E = p-adic E^-k (default: F)')
    p.add_argument('--k', type=int, default=2, help='Weight parameter k >= 0 (default: 2)')
    p.add_argument('--N', type=int, default=None, help='Truncation (default: settings)')
    p.add_argument('--op', action='append', choices=QEXP_OPERATORS,
                   help='Operator(s) to apply in order')

    p = sub.add_parser("family-eval", help="Eisenstein families and their specializations")
    _common(p)
    p.add_argument('--kind', default=TWO_PARAM, choices=(TWO_PARAM, ONE_PARAM_CRITICAL))
    p.add_argument('--ell', type=int, default=None, help='Fixed ell of the critical family')
    p.add_argument('--k1', type=int, default=None,
                   help='Integer part of the (first) weight; omit for the symbol table')
    p.add_argument('--k2', type=int, default=None, help='Integer part of the second weight')
    p.add_argument('--chi1', type=int, default=None, metavar='INDEX')
    p.add_argument('--chi2', type=int, default=None, metavar='INDEX')
    p.add_argument('--N', type=int, default=None, help='Truncation (default: settings)')

    p = sub.add_parser("branching", help="Branching projection coefficients")
    _common(p)
    p.add_argument('--budget', type=int, default=None,
                   help=f'Degree budget r1 + r2 (default: {DEFAULT_DEGREE_BUDGET})')
    p.add_argument('--tuple', type=int, nargs=4, metavar=('R1', 'R2', 'Q', 'R'))
    p.add_argument('--side', choices=SIDES, default=None,
                   help=f'Slot for --tuple (default: both; {FIRST_SLOT} is the first)')

    p = sub.add_parser("verify", help="Run verification suites and write a report")
    _common(p)
    p.add_argument('suite', choices=SUITES + ("all",))
    p.add_argument('--seed', type=int, default=None, help='Seed for random specializations')
    p.add_argument('--jobs', '-j', type=int, default=1, help='Worker processes (default: 1)')
    p.add_argument('--samples', type=int, default=None, help='Moduli sample size at p > 2')
    p.add_argument('--budget', type=int, default=None, help='Branching degree budget')
    p.add_argument('--N', type=int, default=None, help='q-expansion truncation')
    p.add_argument('--timings', action='store_true', help='Include wall times in the report')

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)

    config = VerifyConfig()
    try:
        config.ensure_config_exists()
        cfg = RunConfig.from_args(args, config)
        return COMMANDS[args.command](args, cfg)
    except Gsp4VerifyError as e:
        log.error("Command failed", command=args.command, error=str(e))
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
