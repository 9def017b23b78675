"""
Pydantic models for verification reports.

Reports hold only deterministic data; wall-clock timing is kept on the model
but left out of to_dict() unless asked for, so repeated runs with the same
seed serialize to identical JSON.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class Scope(BaseModel):
    """Which group a report covers."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(description="Matrix size")
    q: int = Field(description="Field order")
    group: Literal["M", "GL", "SL"] = Field(description="Matrix algebra or group")


class PairFailure(BaseModel):
    """One failed check; failures are data, not exceptions."""

    omega: str
    psi: str
    tau: Optional[str] = None
    reason: str
    error: Optional[str] = Field(default=None, description="Exception class name, if any")


class DichotomyCase(BaseModel):
    """A 2x2 pair whose trace set misses exactly one value, as the 2x2 dichotomy predicts."""

    omega: str
    psi: str
    excluded: str


class ProductSection(BaseModel):
    """Class-product decompositions for all pairs of nonscalar classes."""

    pairs_checked: int = 0
    single_class_products: int = Field(
        default=0, description="Products that form a single class"
    )
    products_with_at_least_q_classes: int = 0
    min_classes: Optional[int] = None
    max_classes: Optional[int] = None
    skipped_pairs: int = Field(default=0, description="Pairs skipped for budget reasons")


class VerificationReport(BaseModel):
    """Outcome of a verification sweep."""

    scope: Scope
    claim: str = Field(description="What was verified")
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    exhaustive: bool = Field(
        default=True, description="False when pairs were sampled or an orbit hit the budget"
    )
    seed: Optional[int] = None
    budget: int
    jobs: int = 1
    pairs_checked: int = 0
    witnesses_built: int = 0
    full_trace_sets: int = 0
    oracle_skipped: int = Field(default=0, description="Pairs whose orbit exceeded the budget")
    search_fallbacks: int = 0
    dichotomy_cases: List[DichotomyCase] = Field(default_factory=list)
    failures: List[PairFailure] = Field(default_factory=list)
    unproved_claim: bool = Field(
        default=False, description="Set when the verified statement has no published proof"
    )
    products: Optional[ProductSection] = None
    timing: Optional[float] = Field(default=None, description="Wall-clock seconds")

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        exclude = None if include_timing else {"timing"}
        payload = self.model_dump(mode="json", exclude=exclude)
        payload["passed"] = self.passed
        return payload
