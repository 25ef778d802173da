"""
Run configuration and report models, validated and serialized with
`pydantic`.
"""
import configparser
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from src.utils import Ambient, OutputFormat, load_config


class RunConfig(BaseModel):
    """
    Settings of one command line run: config.ini defaults overridden by flags.
    """

    ambient: Ambient = Ambient.UINF_UA
    format: OutputFormat = OutputFormat.TEXT
    seed: int = Field(default=0, ge=0)

    max_arity: int = Field(default=4, gt=0)
    max_n: int = Field(default=4, gt=0)
    max_corks: int = Field(default=3, gt=0)
    max_inner: int = Field(default=3, gt=0)
    max_size: int = Field(default=3, gt=0)
    max_weight: int = Field(default=8, gt=0)

    random_composites: int = Field(default=500, ge=0)
    random_triples: int = Field(default=200, ge=0)
    random_pairs: int = Field(default=200, ge=0)
    homotopy_samples: int = Field(default=100, ge=0)
    derivation_samples: int = Field(default=100, ge=0)
    axiom_element_bound: int = Field(default=60, gt=0)

    @classmethod
    def from_config(
        cls, config: configparser.ConfigParser = None, **overrides
    ) -> "RunConfig":
        """
        Read defaults from the config sections; overrides equal to None are
        ignored.
        """
        if config is None:
            config = load_config()

        values = {}
        for section in ("run", "bounds", "sweeps"):
            if config.has_section(section):
                values.update(config[section])
        values.update(
            {k: v for k, v in overrides.items() if v is not None}
        )

        return cls(**values)

    def bounds(self) -> Dict[str, int]:
        return {
            "max_arity": self.max_arity,
            "max_n": self.max_n,
            "max_corks": self.max_corks,
            "max_inner": self.max_inner,
            "max_size": self.max_size,
            "max_weight": self.max_weight,
        }

    def stamp(self) -> Dict[str, Any]:
        """
        The fields every report embeds.
        """
        return {
            "ambient": self.ambient,
            "seed": self.seed,
            "bounds": self.bounds(),
        }


class Check(BaseModel):
    """
    One family of exact identities with its failing witnesses.
    """

    name: str
    instances: int = Field(ge=0)
    failures: List[str] = []
    passed: bool = True

    @classmethod
    def from_failures(
        cls, name: str, instances: int, failures: List[str]
    ) -> "Check":
        return cls(
            name=name,
            instances=instances,
            failures=failures,
            passed=not failures,
        )


class AxiomReport(BaseModel):
    """
    Outcome of brute-forcing the operad axioms on a Set-operad.
    """

    operad: str
    max_arity: int
    element_bound: int
    exhaustive: bool
    vacuous: bool
    checks: List[Check]
    passed: bool


class MonoidCensus(BaseModel):
    """
    Binary operations on a finite set.
    """

    size: int = Field(ge=1)
    operations: int
    associative_count: int = Field(ge=0)
    unital_count: int = Field(ge=0)
    max_units_per_op: int = Field(ge=0)
    all_operations_checked: bool
    passed: bool


class UnitTransfer(BaseModel):
    """
    Both equation chains of the unit transfer argument.
    """

    first_chain: str
    second_chain: str
    exchange_holds: bool
    first_is_g_u: bool
    second_is_f_u: bool
    conclusion: bool


class GenerationRow(BaseModel):
    arity: int
    corks: int
    objects: int
    reached_objects: int
    morphism_pairs: int
    reached_pairs: int


class SDRRow(BaseModel):
    """
    Checks on one generator of the retraction.
    """

    generator: str
    f_value: str
    homotopy_residual_zero: bool
    in_lower_level: bool
    no_top_level_terms: bool
    commutes_with_d: bool
    retracts_to_itself: bool


class RunStamp(BaseModel):
    """
    Ambient, seed and bounds a report was produced under.
    """

    ambient: Ambient
    seed: int
    bounds: Dict[str, int]


class VerificationReport(RunStamp):
    """
    Report of a `verify` suite.
    """

    suite: str
    checks: List[Check] = []
    census: Optional[MonoidCensus] = None
    generation: Optional[List[GenerationRow]] = None
    missing: Optional[List[str]] = None
    sdr: Optional[List[SDRRow]] = None
    passed: bool = True

    @field_validator("checks")
    def checks_named(cls, value: List[Check]) -> List[Check]:
        names = [check.name for check in value]
        assert len(names) == len(set(names)), "duplicate check names"
        return value

    def finalize(self) -> "VerificationReport":
        self.passed = all(check.passed for check in self.checks)
        if self.census is not None:
            self.passed = self.passed and self.census.passed
        return self


class CensusReport(RunStamp):
    census: MonoidCensus
    passed: bool


class EnumerationReport(RunStamp):
    """
    Items of one `enumerate` call; `bound` is the truncation that applied
    to this kind.
    """

    kind: str
    arity: int
    bound: int
    count: int
    items: List[str]
    passed: bool = True
