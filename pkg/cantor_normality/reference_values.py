"""Reference values: published sequence prefixes and closed-form targets.

Prefixes are the ones obtained by running the stated rules. Where a published
prefix disagrees with its own rules it is kept separately, for comparison.
"""
from fractions import Fraction
from typing import Dict, List

# =============================================================================
# SUBSTITUTION FIXED POINTS (letters)
# =============================================================================

SUBSTITUTION_PREFIXES = {
    "fibonacci": "abbabbababbab",        # a -> ab, b -> bab
    "thue-morse": "abbabaabbaababba",    # a -> ab, b -> ba
    "rudin-shapiro": "abacabdbabacdcac",  # a -> ab, b -> ac, c -> db, d -> dc
}

# As printed; positions 8, 15 and 16 do not follow from the Rudin-Shapiro rules above
PRINTED_RUDIN_SHAPIRO = "abacabdcabacdcdb"

# =============================================================================
# CONCATENATION STREAMS (raw digits / partial quotients, before the offset)
# =============================================================================

CONCATENATION_PREFIXES: Dict[str, List[int]] = {
    "champernowne": [1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0],
    "squares": [1, 4, 9, 1, 6, 2, 5, 3, 6, 4],
    "primes": [2, 3, 5, 7, 1, 1, 1, 3, 1, 7, 1, 9, 2, 3],
    # p/d for d = 2, 3, 4, 5 and p = 1..d-1, non-reduced fractions included
    "aks": [2, 3, 1, 2, 4, 2, 1, 3, 5, 2, 2, 1, 1, 2, 1, 4],
}

# As printed; position 5 reads 1 where the enumeration gives 4 (the quotient of 1/4)
PRINTED_AKS = [2, 3, 1, 2, 1, 2, 1, 3, 5, 2, 2, 1, 1, 2, 1, 4]

BASE_PREFIXES: Dict[str, List[int]] = {
    "periodic-23": [2, 3, 2, 3, 2, 3],
    "thue-morse": [2, 3, 3, 2, 3, 2, 2, 3],
    "champernowne": [3, 4, 5, 6, 7, 8, 9, 10, 11, 3, 2],
    "squares": [3, 6, 11, 3, 8, 4, 7, 5, 8, 6],
    "aks": [3, 4, 2, 3, 5, 3, 2, 4, 6, 3, 3, 2, 2, 3, 2, 5],
}

# =============================================================================
# FACTOR COMPLEXITY
# =============================================================================

# Distinct k-factors of the Thue-Morse word, k = 1..15
THUE_MORSE_COMPLEXITY = [2, 4, 6, 10, 12, 16, 20, 22, 24, 28, 32, 36, 40, 42, 44]

# =============================================================================
# LIMITING FREQUENCIES AND CONSTRUCTION TARGETS
# =============================================================================

# P_D for single digits over the periodic sequence (2, 3)
PERIODIC_23_DIGIT_LIMITS = {
    (0,): Fraction(5, 12),
    (1,): Fraction(5, 12),
    (2,): Fraction(1, 6),
}

# Rectangles E_B x I_{D,B} of the doubling coding with cells coded 2 and 3
GRID_RECTANGLE_COUNTS = {1: 5, 2: 25, 3: 125}

EX31_TARGETS = {"M/N": Fraction(3, 2)}
# orbit star discrepancy of ex31 on base-4 Champernowne input, target 0
EX31_DISCREPANCY_BOUND = Fraction(1, 20)
EX32_DENSITIES = {"[0,1/2)": Fraction(4, 5), "[1/2,1)": Fraction(6, 5)}
EX32_MASS_LOW = Fraction(2, 5)


def ex32_variant_mass_low(C) -> Fraction:
    """Orbit mass of [0, 1/2) for the threshold variant with constant C."""
    return 1 / (2 * Fraction(C))


def ex35_targets(a: int, b: int, eps) -> Dict[str, Fraction]:
    """Orbit frequency of [0, 1/a) and digit-0 frequency of the biased construction."""
    eps = Fraction(eps)
    return {
        "orbit": Fraction(1, a) + eps / 2,
        "digit 0": Fraction(a + b, 2 * a * b),
    }
