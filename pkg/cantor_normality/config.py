"""Analysis configuration for the Cantor series toolkit.

Every threshold the analyzers use lives here, so a run is fully described by
its configuration file plus its generator spec:

- Finite-n surrogates for limit hypotheses (mass threshold, tolerances)
- Search bounds (primitivity power, enumeration caps)
- Randomness (seed, heavy-tail truncation)
- Output preferences (verbosity, output directory)

Rational parameters are stored as "p/q" strings so that YAML and JSON files
round-trip them exactly.
"""
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

import yaml


@dataclass
class AnalysisConfig:
    """
    Configuration for generator checks and statistical reports.

    Attributes:
        name: Label recorded in reports and manifests
        mass_threshold: Blocks with Q_n(D) below this are "insufficient mass"
        tolerance: Allowed |ratio - 1| for normality verdicts
        stability_tolerance: Allowed drift between N and N/2 estimates
        density_floor: Smallest block density accepted as positive
        t_max: Largest substitution power tried for primitivity
        exponent_cap: Truncation k_max of the heavy-tailed exponent law
        seed: Default seed for Bernoulli models and constructions
        eps_values: Exclusion budgets for the complexity profile
        k_values: Block lengths for the complexity profile
        orbit_bits: Resolution 2^-bits of digit-defined orbit points
        enumeration_limit: Cap on digit blocks enumerated per report
        rn_max_blocks: Largest block set for which the full RN matrix is kept
        weyl_h_max: Largest frequency for Weyl sums
        symbolic_term_limit: Most distinct bases for a symbolic log-integral
        verbose: Print progress lines
        output_dir: Default directory for pipeline outputs
    """

    name: str = "cantor-analysis"

    # Finite-n surrogates
    mass_threshold: int = 10
    tolerance: str = "1/20"
    stability_tolerance: str = "1/100"
    density_floor: str = "1/100"

    # Search bounds
    t_max: int = 16
    enumeration_limit: int = 100000
    rn_max_blocks: int = 64
    symbolic_term_limit: int = 64

    # Randomness
    seed: int = 0
    exponent_cap: int = 65536

    # Complexity profile
    eps_values: List[str] = field(default_factory=lambda: ["1/10", "1/5"])
    k_values: List[int] = field(default_factory=lambda: [1, 2, 4, 8, 16, 32, 64, 128])

    # Orbits
    orbit_bits: int = 64
    weyl_h_max: int = 8

    verbose: bool = True
    output_dir: str = "./cantor_output"

    def fraction(self, name: str) -> Fraction:
        """Read a rational parameter exactly."""
        return Fraction(str(getattr(self, name)))

    def eps_fractions(self) -> List[Fraction]:
        return [Fraction(str(e)) for e in self.eps_values]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AnalysisConfig':
        """Build from a mapping, ignoring keys that are not config fields."""
        return cls(**{k: v for k, v in (data or {}).items() if k in cls.__dataclass_fields__})

    @classmethod
    def from_yaml(cls, yaml_path: str) -> 'AnalysisConfig':
        """
        Load configuration from a YAML file.

        Args:
            yaml_path: Path to YAML configuration file

        Returns:
            AnalysisConfig instance
        """
        with open(yaml_path, 'r') as f:
            data = yaml.safe_load(f)

        return cls.from_dict(data)

    @classmethod
    def from_json(cls, json_path: str) -> 'AnalysisConfig':
        """
        Load configuration from a JSON file.

        Args:
            json_path: Path to JSON configuration file

        Returns:
            AnalysisConfig instance
        """
        with open(json_path, 'r') as f:
            data = json.load(f)

        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str) -> 'AnalysisConfig':
        """Load from YAML or JSON by extension."""
        if path.endswith('.yaml') or path.endswith('.yml'):
            return cls.from_yaml(path)
        if path.endswith('.json'):
            return cls.from_json(path)
        raise ValueError(f"Unknown config format: {path}")

    def to_yaml(self, yaml_path: str) -> None:
        """Save configuration to a YAML file."""
        with open(yaml_path, 'w') as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, sort_keys=False)

    def to_json(self, json_path: str) -> None:
        """Save configuration to a JSON file."""
        with open(json_path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)


# Settings for the desk-scale reproduction runs
DESK_SCALE_CONFIG = AnalysisConfig(
    name="desk-scale",
    tolerance="1/20",
    stability_tolerance="1/100",
    seed=20240101,
    verbose=False,
)
