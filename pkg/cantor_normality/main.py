"""Main orchestration and command-line interface.

This module ties the analyzers together in two ways:
1. CantorAnalysisSystem, a step-by-step pipeline over one basic sequence and
   one number (sequence, expansion, normality, orbit, dynamics, complexity)
2. The `python -m cantor_normality` command line, one subcommand per
   operation, each writing its output plus a run manifest

Exit codes: 0 success, 2 precondition or spec error, 3 precision
unreachable, 4 resource limit.
"""
import argparse
import csv
import os
import sys
import time
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .complexity import determinism_check, log_integral
from .config import AnalysisConfig
from .constructions import (
    build_ex31, build_ex32, build_ex35, build_ex36, champernowne_digits, rebase,
)
from .distribution import (
    empirical_vs_density, hotspot_nu, hotspot_scan, joint_cell_interval_stats,
    star_discrepancy, weyl_sums,
)
from .errors import BadParams, CantorError
from .expansion import CantorReal, digits_of, orbit_sample, orbit_sample_from_digits, value_of
from .generators import (
    PRESETS, BasicSequence, check_dynamic_generation, load_spec, preset, spec_to_dict,
)
from .models import (
    ConstructionResult, FileSource, GeneratorSpec, HotSpotQuery, OrbitSample, RunManifest,
)
from .normality import cell_rectangles, normality_report
from .output_generator import (
    export_normality_csv, export_rectangles_csv, export_rectangles_png, export_rectangles_svg,
    export_report_json, export_rows_csv, generate_report_text, load_exclusion, read_int_file,
    sha256_file, write_int_file, write_manifest,
)
from .reference_values import BASE_PREFIXES
from .validator import (
    overall_agreement, print_complexity_report, print_dynamic_generation_report,
    print_hotspot_results, print_normality_report, print_validation_report, validate_targets,
)


def _orbit(x: CantorReal, N: int, config: AnalysisConfig) -> OrbitSample:
    """Exact orbit points for a rational x, 2^-bits intervals for a digit-defined x."""
    if x.is_exact:
        return orbit_sample(x.rational, x.Q, N)
    return orbit_sample_from_digits(x, x.Q, N, bits=config.orbit_bits)


class CantorAnalysisSystem:
    """Pipeline over one basic sequence and one number in [0, 1)."""

    def __init__(self, output_dir: str = None, config: AnalysisConfig = None):
        """
        Initialize the analysis system.

        Args:
            output_dir: Directory for output files
            config: Optional AnalysisConfig with thresholds and tolerances
        """
        self.config = config or AnalysisConfig()
        self.output_dir = output_dir or self.config.output_dir
        self.spec: Optional[GeneratorSpec] = None
        self.sequence: Optional[BasicSequence] = None
        self.x: Optional[CantorReal] = None
        self.n = 0
        self.results: Dict[str, Any] = {}

        os.makedirs(self.output_dir, exist_ok=True)

    def log(self, message: str) -> None:
        if self.config.verbose:
            print(message)

    def load_sequence(self, spec: GeneratorSpec, n: int) -> List[int]:
        """Build the basic sequence and check it against known prefixes."""
        self.log(f"\n[1/6] Generating basic sequence: {type(spec).__name__}")
        self.spec = spec
        self.sequence = BasicSequence(spec, self.config.t_max)
        self.n = n
        prefix = self.sequence.prefix(min(n, 20))
        self.log(f"  q_1..q_{len(prefix)}: {' '.join(map(str, prefix))}")

        for name, expected in BASE_PREFIXES.items():
            if name in PRESETS and spec_to_dict(spec) == spec_to_dict(preset(name)):
                got = self.sequence.prefix(len(expected))
                if got == expected:
                    self.log(f"  Prefix matches the reference for {name}")
                else:
                    self.log(f"  Warning: prefix differs from the reference for {name}: {got}")
        return prefix

    def expand(self, x) -> List[int]:
        """Attach x (a rational or an explicit digit list) to the sequence."""
        self.log(f"\n[2/6] Expanding x")
        if isinstance(x, (Fraction, int, str)):
            self.x = CantorReal.from_rational(x, self.sequence)
        else:
            self.x = CantorReal.from_digits(x, self.sequence)
        digits = self.x.digits(min(self.n, 20))
        self.log(f"  x_1..x_{len(digits)}: {' '.join(map(str, digits))}")
        return digits

    def analyze_normality(self, ell_max: int) -> None:
        self.log(f"\n[3/6] Normality report (l <= {ell_max})")
        try:
            report = normality_report(self.sequence, self.x, self.n, ell_max, config=self.config)
            self.results["normality"] = report
            self.log(f"  {len(report.rows)} digit blocks, verdict {report.verdict.value}")
        except CantorError as e:
            self.log(f"  Warning: normality report failed: {e}")

    def analyze_orbit(self) -> None:
        self.log(f"\n[4/6] Orbit distribution")
        try:
            sample = _orbit(self.x, self.n, self.config)
            self.results["star_discrepancy"] = star_discrepancy(sample)
            self.results["orbit_width"] = sample.width
            self.results["weyl_sums"] = weyl_sums(sample, self.config.weyl_h_max)
            self.log(f"  D*_N = {float(self.results['star_discrepancy']):.6f} (point width {sample.width})")
        except CantorError as e:
            self.log(f"  Warning: orbit analysis failed: {e}")

    def analyze_dynamics(self, k_max: int = 4) -> None:
        self.log(f"\n[5/6] Dynamical generation (k <= {k_max})")
        try:
            report = check_dynamic_generation(
                self.sequence, k_max, self.n,
                self.config.fraction("stability_tolerance"), self.config.fraction("density_floor"),
            )
            self.results["dynamic_generation"] = report
            for condition in ("stability", "positivity", "total_mass"):
                self.log(f"  {condition:<12} {report.verdict(condition).value}")
        except CantorError as e:
            self.log(f"  Warning: dynamical generation check failed: {e}")

    def analyze_complexity(self) -> None:
        self.log(f"\n[6/6] Complexity profile")
        try:
            report = determinism_check(self.sequence, self.n, config=self.config)
            self.results["complexity"] = report
            self.results["log_integral"] = log_integral(self.sequence, N=self.n, config=self.config)
            self.log(f"  Verdict: {report.verdict.value}")
        except CantorError as e:
            self.log(f"  Warning: complexity profile failed: {e}")

    def generate_output(self, format: str = "text") -> str:
        """
        Write the collected results.

        Args:
            format: Output format ("text", "json", "csv")

        Returns:
            Path to the output file
        """
        if format == "text":
            sections = {
                "SEQUENCE": {"spec": spec_to_dict(self.spec) if self.spec else None, "n": self.n},
            }
            report = self.results.get("normality")
            if report is not None:
                sections["NORMALITY"] = {
                    "verdict": report.verdict.value,
                    **{f"RN extremal ratio, l = {ell}": r for ell, r in report.extremal_ratio.items()},
                }
            if "star_discrepancy" in self.results:
                sections["ORBIT"] = {"star discrepancy": self.results["star_discrepancy"]}
            complexity = self.results.get("complexity")
            if complexity is not None:
                sections["COMPLEXITY"] = {
                    "condition (i)": complexity.condition_i,
                    "condition (ii)": complexity.condition_ii,
                    "verdict": complexity.verdict.value,
                }
            output = generate_report_text(f"CANTOR SERIES ANALYSIS: {self.config.name}", sections)
            output_path = os.path.join(self.output_dir, "analysis.txt")
            with open(output_path, 'w') as f:
                f.write(output + "\n")
            self.log(output)
            return output_path

        elif format == "json":
            output_path = os.path.join(self.output_dir, "analysis.json")
            export_report_json(self.results, output_path, metadata={"config": self.config.to_dict(), "n": self.n})
            self.log(f"    Exported to {output_path}")
            return output_path

        elif format == "csv":
            output_path = os.path.join(self.output_dir, "normality.csv")
            report = self.results.get("normality")
            if report:
                export_normality_csv(report, output_path)
            else:
                export_rows_csv([], output_path)
            self.log(f"    Exported to {output_path}")
            return output_path

        else:
            raise ValueError(f"Unknown format: {format}")


def run_full_pipeline(
    spec: GeneratorSpec,
    x,
    n: int,
    output_dir: str = None,
    ell_max: int = 2,
    config: AnalysisConfig = None
) -> CantorAnalysisSystem:
    """
    Run every analysis on one (Q, x) pair.

    Args:
        spec: GeneratorSpec of the basic sequence
        x: Rational in [0, 1) or explicit digit list
        n: Prefix length
        output_dir: Directory for output files
        ell_max: Largest block length in the normality report
        config: Optional AnalysisConfig

    Returns:
        CantorAnalysisSystem instance with all results
    """
    config = config or AnalysisConfig()
    system = CantorAnalysisSystem(output_dir, config)
    system.log("=" * 70)
    system.log(f"CANTOR SERIES ANALYSIS: {config.name}")
    system.log("=" * 70)

    system.load_sequence(spec, n)
    system.expand(x)
    system.analyze_normality(ell_max)
    system.analyze_orbit()
    system.analyze_dynamics(min(4, n // 2))
    system.analyze_complexity()

    system.generate_output("text")
    system.generate_output("json")
    system.generate_output("csv")

    config_output = os.path.join(system.output_dir, "analysis_config.yaml")
    try:
        config.to_yaml(config_output)
        system.log(f"Config saved to: {config_output}")
    except OSError as e:
        system.log(f"Warning: Could not save config: {e}")

    system.log(f"\nPipeline complete! Output saved to: {system.output_dir}")
    return system


# =============================================================================
# COMMAND LINE
# =============================================================================

def _fraction_list(text: Optional[str]) -> Optional[List[Fraction]]:
    if text is None:
        return None
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise BadParams(f"not a comma-separated list of rationals: {text!r}")


def _int_list(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise BadParams(f"not a comma-separated list of integers: {text!r}")


class _Run:
    """Book-keeping for one command: config, inputs, outputs, manifest."""

    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        self.args = args
        self.argv = list(argv)
        self.started = time.perf_counter()
        self.config = AnalysisConfig.load(args.config) if args.config else AnalysisConfig()
        if args.quiet:
            self.config.verbose = False
        if getattr(args, "seed", None) is not None:
            self.config.seed = args.seed
        self.inputs: List[str] = [args.config] if args.config else []
        self.outputs: List[str] = []
        self.seeds: Dict[str, int] = {}

    def say(self, message: str) -> None:
        if self.config.verbose:
            print(message)

    def sequence(self) -> BasicSequence:
        args = self.args
        if getattr(args, "q_file", None):
            self.inputs.append(args.q_file)
            return BasicSequence(FileSource(args.q_file), self.config.t_max)
        if not getattr(args, "spec", None):
            raise BadParams("give --spec (preset name or JSON file) or --q-file")
        if os.path.exists(args.spec):
            self.inputs.append(args.spec)
        return BasicSequence(load_spec(args.spec), self.config.t_max)

    def number(self, seq: BasicSequence) -> CantorReal:
        args = self.args
        if getattr(args, "digits", None):
            self.inputs.append(args.digits)
            return CantorReal.from_digits(read_int_file(args.digits), seq)
        if getattr(args, "x", None) is not None:
            return CantorReal.from_rational(args.x, seq)
        raise BadParams("give --x p/q or --digits <file>")

    def output(self, path: str) -> str:
        self.outputs.append(path)
        return path

    def finish(self) -> int:
        if self.outputs:
            manifest = RunManifest(
                tool_version=__version__,
                command=self.argv,
                config=self.config.to_dict(),
                seeds=self.seeds,
                inputs={p: sha256_file(p) for p in self.inputs},
                outputs={p: sha256_file(p) for p in self.outputs},
                wall_clock_seconds=round(time.perf_counter() - self.started, 3),
            )
            path = write_manifest(manifest, self.outputs[0])
            self.say(f"Manifest saved to: {path}")
        return 0


def _write_report(run: _Run, report: Any, rows: Sequence[Any]) -> None:
    args = run.args
    if not args.out:
        return
    if args.format == "csv":
        export_rows_csv(rows, run.output(args.out))
    elif args.format == "json":
        export_report_json(report, run.output(args.out))
    else:
        raise BadParams(f"Unknown format for this command: {args.format}")
    run.say(f"    Exported to {args.out}")


def cmd_seq(run: _Run) -> int:
    """Write q_1..q_n."""
    bases = run.sequence().prefix(run.args.n)
    if run.args.out:
        write_int_file(bases, run.output(run.args.out))
    else:
        print(" ".join(map(str, bases)))
    return run.finish()


def cmd_expand(run: _Run) -> int:
    """Write x_1..x_n of a rational x."""
    seq = run.sequence()
    if run.args.x is None:
        raise BadParams("expand needs --x p/q")
    digits = digits_of(run.args.x, seq, run.args.n)
    if run.args.out:
        write_int_file(digits, run.output(run.args.out))
    else:
        print(" ".join(map(str, digits)))
    return run.finish()


def cmd_value(run: _Run) -> int:
    """Print the exact partial sum of a digit file."""
    seq = run.sequence()
    if not run.args.digits:
        raise BadParams("value needs --digits <file>")
    run.inputs.append(run.args.digits)
    digits = read_int_file(run.args.digits)
    value = value_of(digits, seq, run.args.n)
    print(str(value))
    if run.args.out:
        with open(run.output(run.args.out), 'w') as f:
            f.write(f"{value}\n")
    return run.finish()


def cmd_stats(run: _Run) -> int:
    seq = run.sequence()
    x = run.number(seq)
    exclusion = None
    if run.args.exclude:
        run.inputs.append(run.args.exclude)
        exclusion = load_exclusion(run.args.exclude)
    run.say(f"\n[1/2] Counting blocks up to length {run.args.block_len} over n = {run.args.n}")
    report = normality_report(seq, x, run.args.n, run.args.block_len, tol=run.args.tol,
                              config=run.config, exclusion=exclusion)
    if run.config.verbose:
        print_normality_report(report)
    run.say(f"\n[2/2] Writing report")
    if run.args.out and run.args.format == "csv":
        export_normality_csv(report, run.output(run.args.out))
        run.say(f"    Exported to {run.args.out}")
    else:
        _write_report(run, report, report.rows)
    return run.finish()


def cmd_grid(run: _Run) -> int:
    spec = load_spec(run.args.spec) if run.args.spec else None
    if spec is None:
        raise BadParams("grid needs --spec (doubling or rotation model)")
    rectangles = cell_rectangles(spec, run.args.block_len)
    blocks = sorted({r.B for r in rectangles})
    run.say(f"  {len(rectangles)} rectangles over {len(blocks)} cylinder sets E_B")
    if run.args.out:
        path = run.output(run.args.out)
        if run.args.format == "csv":
            export_rectangles_csv(rectangles, path)
        elif run.args.format == "png":
            export_rectangles_png(rectangles, path)
        else:
            export_rectangles_svg(rectangles, path)
    return run.finish()


def cmd_hotspot(run: _Run) -> int:
    seq = run.sequence()
    x = run.number(seq)
    exclusion = load_exclusion(run.args.exclude) if run.args.exclude else None
    if run.args.exclude:
        run.inputs.append(run.args.exclude)
    sample = _orbit(x, run.args.n, run.config)
    sigmas = _fraction_list(run.args.sigma) or [Fraction(1, 2)]
    if run.args.interval:
        a, b = _fraction_list(run.args.interval)
        results = [hotspot_nu(sample, HotSpotQuery(a=a, b=b, sigma=s, C=run.args.C, exclusion=exclusion))
                   for s in sigmas]
    else:
        results = hotspot_scan(sample, sigmas, run.args.level, exclusion, run.args.C)
    if run.config.verbose:
        print_hotspot_results(results)
    _write_report(run, results, results)
    return run.finish()


def cmd_complexity(run: _Run) -> int:
    seq = run.sequence()
    report = determinism_check(
        seq, run.args.n, _fraction_list(run.args.eps), _int_list(run.args.k), config=run.config,
    )
    if run.config.verbose:
        print_complexity_report(report)
    _write_report(run, report, report.table)
    return run.finish()


def cmd_orbit(run: _Run) -> int:
    seq = run.sequence()
    x = run.number(seq)
    sample = _orbit(x, run.args.n, run.config)
    discrepancy = star_discrepancy(sample)
    run.say(f"  D*_N = {discrepancy} (~{float(discrepancy):.6f}), point width {sample.width}")

    summary: Dict[str, Any] = {"N": sample.N, "star_discrepancy": discrepancy, "width": sample.width,
                               "weyl_sums": weyl_sums(sample, run.config.weyl_h_max)}
    if run.args.density:
        cells = []
        for part in run.args.density.split(";"):
            lo, hi, d = _fraction_list(part)
            cells.append((lo, hi, d))
        summary["density"] = empirical_vs_density(sample, cells)
        run.say(f"  sup error against the density: {float(summary['density'].sup_error):.6f}")
    if run.args.block_len:
        summary["joint"] = joint_cell_interval_stats(seq, sample, run.args.block_len)

    if run.args.out:
        path = run.output(run.args.out)
        if run.args.format == "csv":
            with open(path, 'w', newline='') as csvfile:
                writer = csv.writer(csvfile)
                writer.writerow(['n', 'point_num', 'point_hi_num', 'point_den'])
                for n, num in enumerate(sample.numerators):
                    writer.writerow([n, num, num + sample.spread, sample.denominator])
        else:
            export_report_json(summary, path)
    return run.finish()


def cmd_dyngen(run: _Run) -> int:
    seq = run.sequence()
    report = check_dynamic_generation(
        seq, run.args.k_max, run.args.n,
        Fraction(run.args.tol) if run.args.tol else run.config.fraction("stability_tolerance"),
        run.config.fraction("density_floor"),
    )
    if run.config.verbose:
        print_dynamic_generation_report(report)
    _write_report(run, report, report.rows)
    return run.finish()


def _construction_observations(result: ConstructionResult, config: AnalysisConfig) -> Dict[str, Fraction]:
    """Statistics of the emitted (Q, digits) pair matching the declared targets."""
    observed = {k: v for k, v in result.observations.items() if isinstance(v, Fraction)}
    M = len(result.digits)
    if result.name == "ex31":
        observed["N_n((2))"] = Fraction(result.digits.count(2))
        observed["N_n((3))"] = Fraction(result.digits.count(3))
    points = M - (config.orbit_bits + 8) + 1
    if points > 0 and result.name == "ex31":
        sample = orbit_sample_from_digits(result.digits, result.bases, points, bits=config.orbit_bits)
        observed["star discrepancy"] = star_discrepancy(sample)
    if points > 0 and result.name in ("ex32", "ex35"):
        sample = orbit_sample_from_digits(result.digits, result.bases, points, bits=config.orbit_bits)
        a = result.parameters.get("a", 2)
        interval = (Fraction(0), Fraction(1, a))
        inside = sum(1 for i in range(points) if sample.classify(i, *interval).value == "in")
        key = "mass [0,1/2)" if result.name == "ex32" else f"orbit [0,1/{a})"
        observed[key] = Fraction(inside, points)
    return observed


def cmd_repro(run: _Run) -> int:
    args = run.args
    config = run.config
    run.seeds["seed"] = config.seed
    y4 = read_int_file(args.source) if args.source else None
    if args.source:
        run.inputs.append(args.source)

    if args.name == "ex31":
        result = build_ex31(args.n, y4)
    elif args.name == "ex32":
        result = build_ex32(args.n, y4, args.C)
    elif args.name == "ex35":
        result = build_ex35(args.a, args.b, args.eps or "1/4", args.n, config.seed)
    elif args.name in ("ex36i", "ex36ii"):
        result = build_ex36(args.g, args.n, args.name[4:], config.seed, args.k_max or config.exponent_cap)
    elif args.name == "rebase":
        pattern = _int_list(args.pattern) or [2, 3]
        G = 1
        for b in pattern:
            G *= b
        source = y4 if y4 is not None else list(_take_champernowne(G, args.n))
        digits = rebase(source, G, pattern)
        bases = (pattern * len(source))[:len(digits)]
        result = ConstructionResult(name="rebase", bases=bases, digits=digits,
                                    parameters={"G": G, "pattern": pattern, "N": len(source)})
    else:
        raise BadParams(f"Unknown construction: {args.name}")

    run.say(f"\n[1/2] Built {result.name}: {len(result.bases)} bases")
    observed = _construction_observations(result, config)
    validation = validate_targets(observed, result.targets, args.tol or config.fraction("tolerance"))
    if config.verbose and validation:
        print_validation_report(validation)
        run.say(f"  Targets met: {overall_agreement(validation):.1f}%")

    run.say(f"\n[2/2] Writing outputs")
    prefix = args.out or os.path.join(config.output_dir, result.name)
    os.makedirs(os.path.dirname(os.path.abspath(prefix)), exist_ok=True)
    export_report_json(
        {"name": result.name, "parameters": result.parameters, "targets": result.targets,
         "observations": result.observations, "validation": validation},
        run.output(f"{prefix}.json"),
    )
    write_int_file(result.bases, run.output(f"{prefix}.bases.txt"))
    write_int_file(result.digits, run.output(f"{prefix}.digits.txt"))
    return run.finish()


def _take_champernowne(base: int, count: int):
    digits = champernowne_digits(base)
    for _ in range(count):
        yield next(digits)


def cmd_pipeline(run: _Run) -> int:
    spec = load_spec(run.args.spec)
    x = read_int_file(run.args.digits) if run.args.digits else (run.args.x or "0")
    system = run_full_pipeline(spec, x, run.args.n, run.args.out, run.args.block_len, run.config)
    for name in ("analysis.txt", "analysis.json", "normality.csv"):
        run.output(os.path.join(system.output_dir, name))
    return run.finish()


COMMANDS = {
    "seq": cmd_seq,
    "expand": cmd_expand,
    "value": cmd_value,
    "stats": cmd_stats,
    "grid": cmd_grid,
    "hotspot": cmd_hotspot,
    "complexity": cmd_complexity,
    "orbit": cmd_orbit,
    "dyngen": cmd_dyngen,
    "repro": cmd_repro,
    "pipeline": cmd_pipeline,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML or JSON AnalysisConfig file")
    common.add_argument("--quiet", action="store_true", help="suppress progress output")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--out", help="output path")
    common.add_argument("--format", default="json", choices=["json", "csv", "svg", "png"])

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--spec", help="preset name or GeneratorSpec JSON file")
    source.add_argument("--q-file", dest="q_file", help="file of bases, one per line")
    source.add_argument("--n", type=int, default=1000, help="prefix length")

    number = argparse.ArgumentParser(add_help=False)
    number.add_argument("--x", help="rational in [0,1) as p/q")
    number.add_argument("--digits", help="file of Q-digits, one per line")

    parser = argparse.ArgumentParser(
        prog="cantor_normality",
        description="Exact Cantor series expansions and normality diagnostics",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("seq", parents=[common, source], help="write a basic sequence prefix")
    sub.add_parser("expand", parents=[common, source, number], help="digits of a rational")
    sub.add_parser("value", parents=[common, source, number], help="exact value of a digit file")

    p = sub.add_parser("stats", parents=[common, source, number], help="normality report")
    p.add_argument("--block-len", dest="block_len", type=int, default=2)
    p.add_argument("--tol", type=Fraction)
    p.add_argument("--exclude", help="file of excluded window indices")

    p = sub.add_parser("grid", parents=[common, source], help="cell rectangles E_B x I_{D,B}")
    p.add_argument("--block-len", dest="block_len", type=int, default=1)

    p = sub.add_parser("hotspot", parents=[common, source, number], help="hot-spot counts")
    p.add_argument("--sigma", help="comma-separated sigma values, default 1/2")
    p.add_argument("--interval", help="a,b; omit to scan dyadic intervals")
    p.add_argument("--level", type=int, default=8)
    p.add_argument("--C", type=Fraction, default=Fraction(1))
    p.add_argument("--exclude", help="file of excluded orbit indices")

    p = sub.add_parser("complexity", parents=[common, source], help="determinism diagnostics")
    p.add_argument("--eps", help="comma-separated exclusion budgets")
    p.add_argument("--k", help="comma-separated block lengths")

    p = sub.add_parser("orbit", parents=[common, source, number], help="orbit sample and discrepancy")
    p.add_argument("--density", help="lo,hi,d;lo,hi,d;... piecewise-constant target")
    p.add_argument("--block-len", dest="block_len", type=int, default=0)

    p = sub.add_parser("dyngen", parents=[common, source], help="dynamical generation checks")
    p.add_argument("--k-max", dest="k_max", type=int, default=4)
    p.add_argument("--tol", type=Fraction)

    p = sub.add_parser("repro", parents=[common], help="run a construction")
    p.add_argument("name", choices=["ex31", "ex32", "ex35", "ex36i", "ex36ii", "rebase"])
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--source", help="digit source file (base 4, or base G for rebase)")
    p.add_argument("--C", type=Fraction)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=4)
    p.add_argument("--eps", type=Fraction)
    p.add_argument("--g", type=int, default=2)
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--pattern", help="periodic target pattern for rebase, e.g. 2,3")
    p.add_argument("--tol", type=Fraction)

    p = sub.add_parser("pipeline", parents=[common, source, number], help="run every analysis")
    p.add_argument("--block-len", dest="block_len", type=int, default=2)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        run = _Run(args, argv)
        return COMMANDS[args.command](run)
    except CantorError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except MemoryError:
        print("Error: out of memory", file=sys.stderr)
        return 4
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
