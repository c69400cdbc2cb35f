"""Comparison of observed statistics with declared targets, and report tables."""
from fractions import Fraction
from typing import Dict, List, Tuple

from .models import (
    ComplexityReport, DynamicGenerationReport, HotSpotResult, NormalityReport,
    ValidationResult, Verdict,
)

STATUS_SYMBOLS = {
    Verdict.PASS: "✓",
    Verdict.SUSPECT: "~",
    Verdict.INSUFFICIENT: "○",
    Verdict.FAIL: "✗",
}


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return f"{float(value):.6f}"
    if value is None:
        return "-"
    return str(value)


def validate_targets(
    observed: Dict[str, Fraction],
    targets: Dict[str, Fraction],
    tolerance
) -> List[ValidationResult]:
    """
    Compare observed statistics against their declared targets.

    Args:
        observed: Statistic name -> observed value
        targets: Statistic name -> target value
        tolerance: Largest |observed - target| accepted as close

    Returns:
        List of ValidationResult objects, one per target that was observed
    """
    tolerance = Fraction(tolerance)
    results = []

    for item in sorted(targets):
        if item not in observed or observed[item] is None:
            continue
        expected = Fraction(targets[item])
        actual = Fraction(observed[item])
        difference = actual - expected

        if difference == 0:
            status = "exact"
        elif abs(difference) <= tolerance:
            status = "close"
        else:
            status = "miss"

        results.append(ValidationResult(
            item=item,
            expected=expected,
            actual=actual,
            difference=difference,
            tolerance=tolerance,
            status=status
        ))

    return results


def print_validation_report(results: List[ValidationResult]) -> Tuple[int, int, int]:
    """
    Print a formatted target comparison.

    Returns:
        Tuple of (exact_matches, close_matches, misses)
    """
    exact = sum(1 for r in results if r.status == "exact")
    close = sum(1 for r in results if r.status == "close")
    miss = len(results) - exact - close

    print("\n" + "=" * 80)
    print("VALIDATION REPORT: Observed vs Target")
    print("=" * 80)
    print(f"{'Item':<30} {'Target':>12} {'Observed':>12} {'Diff':>12} {'Tol':>8} {'Status':>7}")
    print("-" * 80)

    for r in results:
        symbol = {"exact": "✓", "close": "~", "miss": "✗"}.get(r.status, "?")
        print(f"{r.item:<30} {_fmt(r.expected):>12} {_fmt(r.actual):>12} "
              f"{float(r.difference):>+12.6f} {float(r.tolerance):>8.4f} {symbol:>7}")

    print("-" * 80)
    total = len(results)
    if total:
        print(f"\nSUMMARY:")
        print(f"  Exact:   {exact:3d} / {total}")
        print(f"  Close:   {close:3d} / {total}")
        print(f"  Misses:  {miss:3d} / {total}")
    print("=" * 80)

    return exact, close, miss


def overall_agreement(results: List[ValidationResult]) -> float:
    """Percentage of targets met exactly or within tolerance."""
    if not results:
        return 0.0

    met = sum(1 for r in results if r.status in ("exact", "close"))
    return (met / len(results)) * 100


# =============================================================================
# REPORT TABLES
# =============================================================================

def print_normality_report(report: NormalityReport, limit: int = 40) -> None:
    """Print the N/Q table, extremal RN ratios and the overall verdict."""
    print("\n" + "=" * 80)
    print(f"NORMALITY REPORT: n = {report.n}, l <= {report.ell_max}, "
          f"tol = {report.tolerance}, theta = {report.mass_threshold}")
    print("=" * 80)
    print(f"{'l':>2} {'D':<20} {'N_n(D)':>10} {'Q_n(D)':>14} {'N/Q':>10} {'':>3}")
    print("-" * 80)
    for r in report.rows[:limit]:
        D = ",".join(map(str, r.D))
        print(f"{r.ell:>2} {D:<20} {r.count:>10} {float(r.expectation):>14.3f} "
              f"{_fmt(r.ratio):>10} {STATUS_SYMBOLS[r.status]:>3}")
    if len(report.rows) > limit:
        print(f"  ... {len(report.rows) - limit} more rows in the JSON/CSV output")
    print("-" * 80)
    for ell, ratio in sorted(report.extremal_ratio.items()):
        print(f"  RN extremal ratio, l = {ell}: {_fmt(ratio)}")
    if report.truncated:
        print("  Warning: digit-block enumeration truncated at the configured limit")
    print(f"\n  Verdict: {report.verdict.value} {STATUS_SYMBOLS[report.verdict]}")
    print("=" * 80)


def print_dynamic_generation_report(report: DynamicGenerationReport) -> None:
    print("\n" + "=" * 70)
    print(f"DYNAMIC GENERATION: N = {report.N}, k <= {report.k_max}")
    print("=" * 70)
    print(f"{'k':>3} {'blocks':>8} {'drift':>12} {'min freq':>12} {'(i)':>4} {'(ii)':>5} {'(iii)':>6}")
    print("-" * 70)
    for r in report.rows:
        print(f"{r.k:>3} {r.observed_blocks:>8} {float(r.max_drift):>12.6f} {float(r.min_frequency):>12.6f} "
              f"{STATUS_SYMBOLS[r.stability]:>4} {STATUS_SYMBOLS[r.positivity]:>5} {STATUS_SYMBOLS[r.total_mass]:>6}")
    print("-" * 70)
    for condition in ("stability", "positivity", "total_mass"):
        print(f"  {condition:<12} {report.verdict(condition).value}")
    print("=" * 70)


def print_complexity_report(report: ComplexityReport) -> None:
    print("\n" + "=" * 70)
    print(f"COMPLEXITY PROFILE: N = {report.N}")
    print("=" * 70)
    print(f"{'k':>4} {'eps':>8} {'p_eps':>10} {'rate':>10}")
    print("-" * 70)
    for r in report.table:
        rate = "-" if r.rate is None else f"{r.rate:.4f}"
        print(f"{r.k:>4} {str(r.eps):>8} {r.p_eps:>10} {rate:>10}")
    print("-" * 70)
    for eps, rate in report.min_rate.items():
        shown = "-" if rate is None else f"{rate:.4f}"
        print(f"  min rate, eps = {eps}: {shown}")
    print(f"  condition (i):  {report.condition_i}")
    print(f"  condition (ii): {report.condition_ii} "
          f"(letter entropy {report.letter_entropy:.4f}, at N/2 {report.letter_entropy_half:.4f})")
    print(f"  {report.unseen_letter_caveat}")
    print(f"\n  Verdict: {report.verdict.value}")
    print("=" * 70)


def print_hotspot_results(results: List[HotSpotResult], limit: int = 20) -> None:
    print("\n" + "=" * 80)
    print("HOT-SPOT COUNTS")
    print("=" * 80)
    print(f"{'[a, b)':<24} {'sigma':>6} {'nu':>8} {'unc':>5} {'nu/N':>10} {'C(b-a)^s':>4} {'C(b-a)':>7} {'budget':>7}")
    print("-" * 80)
    for r in results[:limit]:
        interval = f"[{r.a}, {r.b})"
        print(f"{interval:<24} {str(r.sigma):>6} {r.count:>8} {r.uncertain:>5} {float(r.ratio):>10.6f} "
              f"{'✓' if r.holds_sigma_bound else '✗':>8} {'✓' if r.holds_linear_bound else '✗':>7} "
              f"{'✓' if r.within_budget else '✗':>7}")
    if len(results) > limit:
        print(f"  ... {len(results) - limit} more rows in the JSON/CSV output")
    print("=" * 80)
