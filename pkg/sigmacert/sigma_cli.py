"""
Command line interface of the Sigma certification tool

Sub-commands:
- sigma    -- search for a witness and write a certificate
- verify   -- check a certificate against a group spec
- cone     -- evaluate or describe the cone of characters certified by a certificate
- ball     -- list a ball of the Cayley graph
- rips     -- list representative simplices of a Rips complex
- suggest  -- propose a connecting vector

Group specs and characters are read from YAML files; group specs may also be
given as template names (e.g. "Z2", "F2", "F2xZ1"). A run configuration YAML
(--config) may provide any option; options given on the command line win.

Exit codes: 0 witness found / certificate accepted / character in cone,
2 search gave MAYBE / certificate rejected / character outside cone, 1 error.
"""

import os
import sys
import argparse

from .certificate import (
    HOMOLOGICAL,
    HOMOTOPICAL,
    CertificateError,
    ConnectingVector,
    load_certificate,
    save_certificate,
    witness_summary,
)
from .cone import cone_describe, cone_eval, format_cone_value
from .group import (
    CharacterError,
    GroupSpecError,
    character_from_dict,
    load_group_spec,
    template_spec,
    validate_character,
)
from .rips import enumerate_rep_simplices
from .search import SearchBudget
from .sigma_hom import run_algorithm1, suggest_connecting_vector
from .sigma_htpy import run_algorithm2
from .sigma_utils import display_simplex, display_word, load_yaml
from .verify import verify_certificate
from .version import __version__

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

FLAVORS = {"hom": HOMOLOGICAL, "htpy": HOMOTOPICAL}

DEFAULT_K_MAX = 4
DEFAULT_SUGGEST_RADIUS = 2

# options that may come from the run configuration file
CONFIG_KEYS = ["spec", "char", "m", "flavor", "cv", "jobs", "out", "report", "k_max", "radius"]
BUDGET_KEYS = ["radius_schedule", "max_radius", "step_time_limit", "time_limit", "max_disk_states",
               "improve_with_kernel"]


class SigmaRunContext:
    """Keeps the context of the current run of the tool"""

    def __init__(self):
        self.command = None
        self.config = None
        self.jobs = None

        self.spec = None
        self.char = None
        self.m = None
        self.flavor = None
        self.cv = None
        self.out = None
        self.report = None

        self.certificate = None
        self.describe = None
        self.radius = None
        self.q = None
        self.k = None
        self.k_max = None
        self.homology = None

        self.radius_schedule = None
        self.max_radius = None
        self.step_time_limit = None
        self.time_limit = None
        self.max_disk_states = None
        self.improve_with_kernel = None

        self.group = None
        self.budget = None


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the error code of the tool"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _make_parser():
    parser = _ArgumentParser(prog="sigma-certify", description="Certify membership in Sigma invariants")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def common(sub):
        sub.add_argument("--spec", help="group spec YAML file or template name")
        sub.add_argument("--config", help="run configuration YAML file")
        sub.add_argument("--jobs", type=int, help="number of worker threads")
        return sub

    sigma = common(subparsers.add_parser("sigma", help="search for a witness"))
    sigma.add_argument("--char", help="character: inline 'a=1,b=0' or YAML file")
    sigma.add_argument("--m", type=int, help="top degree")
    sigma.add_argument("--flavor", choices=sorted(FLAVORS))
    sigma.add_argument("--cv", help="connecting vector, e.g. 0,1,2, or 'suggest'")
    sigma.add_argument("--k-max", type=int, help="largest entry tried by --cv suggest")
    sigma.add_argument("--radius", type=int, help="ball radius used by --cv suggest")
    sigma.add_argument("--max-radius", type=int)
    sigma.add_argument("--radius-schedule", help="window radii to try, e.g. 0,1,2,4")
    sigma.add_argument("--time-limit", type=float, help="seconds for the whole search")
    sigma.add_argument("--step-time-limit", type=float, help="seconds for a single simplex")
    sigma.add_argument("--max-disk-states", type=int)
    sigma.add_argument("--kernel", dest="improve_with_kernel", action="store_true", default=None,
                       help="shorten chain solutions with kernel vectors")
    sigma.add_argument("--out", help="where to write the certificate")
    sigma.add_argument("--report", help="where to write the MAYBE report")

    verify = common(subparsers.add_parser("verify", help="verify a certificate"))
    verify.add_argument("certificate")

    cone = common(subparsers.add_parser("cone", help="evaluate the certified cone"))
    cone.add_argument("certificate")
    cone.add_argument("--char", help="character to evaluate")
    cone.add_argument("--describe", action="store_true", default=None, help="print the inequality description")

    ball = common(subparsers.add_parser("ball", help="list a ball of the Cayley graph"))
    ball.add_argument("--radius", type=int)

    rips = common(subparsers.add_parser("rips", help="list representative simplices"))
    rips.add_argument("--q", type=int, required=True)
    rips.add_argument("--k", type=int, required=True)

    suggest = common(subparsers.add_parser("suggest", help="propose a connecting vector"))
    suggest.add_argument("--m", type=int)
    suggest.add_argument("--k-max", type=int)
    suggest.add_argument("--radius", type=int, help="radius of the ball used as window")
    suggest.add_argument("--homology", action="store_true", default=None, help="also print homology summaries")
    return parser


def parse_args(argv=None) -> SigmaRunContext:
    """Create context object from parsed command line arguments"""
    ctx = SigmaRunContext()
    params = _make_parser().parse_args(argv)
    for key, value in vars(params).items():
        setattr(ctx, key, value)
    return ctx


def _apply_config(ctx: SigmaRunContext):
    data = load_yaml(ctx.config, "run configuration") or {}
    if not isinstance(data, dict):
        raise ValueError("run configuration must be a mapping")
    base_dir = os.path.dirname(os.path.abspath(ctx.config))
    budget = data.pop("budget", None) or {}
    for key, value in data.items():
        attr = key.replace("-", "_")
        if attr not in CONFIG_KEYS:
            raise ValueError(f"unknown option in run configuration: {key}")
        if attr in ("spec", "char") and isinstance(value, str) and os.path.isfile(os.path.join(base_dir, value)):
            value = os.path.join(base_dir, value)
        if attr == "cv" and isinstance(value, list):
            value = ",".join(str(n) for n in value)
        if getattr(ctx, attr, None) is None:
            setattr(ctx, attr, value)
    for key, value in budget.items():
        attr = key.replace("-", "_")
        if attr not in BUDGET_KEYS:
            raise ValueError(f"unknown budget option in run configuration: {key}")
        if getattr(ctx, attr) is None:
            setattr(ctx, attr, value)


def load_spec_arg(text):
    """Group spec from a file path, or from a template name"""
    if text is None:
        raise ValueError("Need a group spec (--spec)")
    if os.path.isfile(text):
        return load_group_spec(text)
    return template_spec(text)


def load_character_arg(spec, text):
    """Character from inline text 'a=1,b=-1/2' or from a YAML file"""
    if text is None:
        raise CharacterError("Need a character (--char)")
    if os.path.isfile(text):
        return character_from_dict(spec, load_yaml(text, "character"))
    values = {}
    for part in text.split(","):
        if "=" not in part:
            raise CharacterError(f"malformed character {text!r}: expected gen=value pairs")
        gen, value = part.split("=", 1)
        gen = gen.strip()
        if gen in values:
            raise CharacterError(f"generator {gen} given twice in character")
        values[gen] = value.strip()
    return validate_character(spec, values)


def _parse_schedule(value):
    if value is None or isinstance(value, list):
        return value
    return [int(r) for r in str(value).split(",") if r.strip()]


def initialize(ctx: SigmaRunContext):
    """Merge run configuration into the context and load the group spec"""
    if ctx.config:
        _apply_config(ctx)
    if ctx.jobs is None:
        ctx.jobs = 1
    if ctx.jobs < 1:
        raise ValueError("--jobs must be at least 1")
    ctx.group = load_spec_arg(ctx.spec)

    budget = {}
    for key in BUDGET_KEYS:
        value = getattr(ctx, key)
        if value is not None:
            budget[key] = value
    if "radius_schedule" in budget:
        budget["radius_schedule"] = _parse_schedule(budget["radius_schedule"])
        budget.setdefault("max_radius", max(budget["radius_schedule"], default=0))
    ctx.budget = SearchBudget(**budget)
    return ctx


def cmd_sigma(ctx: SigmaRunContext) -> int:
    spec = ctx.group
    chi = load_character_arg(spec, ctx.char)
    flavor = FLAVORS[ctx.flavor or "hom"]

    if ctx.cv is None or str(ctx.cv) == "suggest":
        m = ctx.m if ctx.m is not None else (2 if flavor == HOMOTOPICAL else 1)
        print(f"Suggesting connecting vector for m = {m}...")
        k_max = ctx.k_max if ctx.k_max is not None else DEFAULT_K_MAX
        radius = ctx.radius if ctx.radius is not None else DEFAULT_SUGGEST_RADIUS
        suggestion = suggest_connecting_vector(spec, m, k_max=k_max, window_radius=radius)[0]
        if not suggestion.complete:
            raise ValueError(f"could not suggest a connecting vector, best found {suggestion.to_text()}")
        print("Using " + suggestion.to_text())
        cv = ConnectingVector(suggestion.vector.entries, flavor, heuristic=True)
    else:
        cv = ConnectingVector.parse(str(ctx.cv), flavor)
    m = ctx.m if ctx.m is not None else cv.m

    if flavor == HOMOLOGICAL:
        result = run_algorithm1(spec, cv, chi, ctx.budget, m=m, jobs=ctx.jobs)
    else:
        result = run_algorithm2(spec, cv, chi, ctx.budget, m=m, jobs=ctx.jobs)

    if not result:
        print(result.to_text())
        if ctx.report:
            with open(ctx.report, "w") as f:
                f.write(result.to_text() + "\n")
        return EXIT_NEGATIVE

    print("YES")
    print(witness_summary(result))
    if ctx.out:
        save_certificate(result, spec, ctx.out)
        print("Certificate written to " + ctx.out)
    return EXIT_OK


def cmd_verify(ctx: SigmaRunContext) -> int:
    witness = load_certificate(ctx.certificate, ctx.group)
    verdict = verify_certificate(witness, ctx.group, jobs=ctx.jobs)
    if verdict:
        print(verdict.to_text())
        return EXIT_OK
    print(verdict.to_text(), file=sys.stderr)
    return EXIT_NEGATIVE


def cmd_cone(ctx: SigmaRunContext) -> int:
    witness = load_certificate(ctx.certificate, ctx.group)
    if ctx.describe or ctx.char is None:
        print(cone_describe(witness, ctx.group).to_text())
        if ctx.char is None:
            return EXIT_OK
    y = load_character_arg(ctx.group, ctx.char)
    value, member = cone_eval(witness, ctx.group, y)
    print(f"{'member' if member else 'non-member'}, u = {format_cone_value(value)}")
    return EXIT_OK if member else EXIT_NEGATIVE


def cmd_ball(ctx: SigmaRunContext) -> int:
    radius = ctx.radius if ctx.radius is not None else 1
    elements = ctx.group.ball(radius)
    for g in elements:
        print(display_word(g))
    print(f"{len(elements)} elements", file=sys.stderr)
    return EXIT_OK


def cmd_rips(ctx: SigmaRunContext) -> int:
    simplices = enumerate_rep_simplices(ctx.group, ctx.q, ctx.k)
    for simplex in simplices:
        print(display_simplex(simplex))
    print(f"{len(simplices)} simplices", file=sys.stderr)
    return EXIT_OK


def cmd_suggest(ctx: SigmaRunContext) -> int:
    m = ctx.m if ctx.m is not None else 1
    k_max = ctx.k_max if ctx.k_max is not None else DEFAULT_K_MAX
    radius = ctx.radius if ctx.radius is not None else DEFAULT_SUGGEST_RADIUS
    suggestions = suggest_connecting_vector(ctx.group, m, k_max, radius, with_homology=bool(ctx.homology))
    for suggestion in suggestions:
        print(suggestion.to_text())
        for q, k, (rank, torsion) in suggestion.homology:
            torsion_text = " + ".join(f"Z/{d}" for d in torsion)
            print(f"  reduced H_{q}(VR_{k}): rank {rank}" + (f", torsion {torsion_text}" if torsion else ""))
    return EXIT_OK if suggestions and suggestions[0].complete else EXIT_NEGATIVE


COMMANDS = {
    "sigma": cmd_sigma,
    "verify": cmd_verify,
    "cone": cmd_cone,
    "ball": cmd_ball,
    "rips": cmd_rips,
    "suggest": cmd_suggest,
}


def run_sigma_with_context(ctx: SigmaRunContext) -> int:
    try:
        initialize(ctx)
        return COMMANDS[ctx.command](ctx)
    except (GroupSpecError, CharacterError, CertificateError, ValueError, OSError) as err:
        print("Error: " + str(err), file=sys.stderr)
        return EXIT_ERROR


def run_sigma(argv):
    """This function can be used to run the tool from other Python scripts; returns the exit code"""
    return run_sigma_with_context(parse_args(argv))
