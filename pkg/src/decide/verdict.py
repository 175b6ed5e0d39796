import dataclasses
import enum
from typing import Any, Iterable

from errors import ContractError


class Decision(str, enum.Enum):
    iso = "ISO"
    not_iso = "NOT_ISO"
    consistent = "CONSISTENT"
    ruled_out = "RULED_OUT"
    # The hypotheses of the procedure do not hold, so no decision is made
    declined = "DECLINED"


class Fidelity(str, enum.Enum):
    """What a verdict certifies: a bundle-level statement, or only its Chow-ring shadow."""

    split_exact = "SPLIT_EXACT"
    chern_level = "CHERN_LEVEL"

    def note(self) -> str:
        return FIDELITY_NOTES[self]


FIDELITY_NOTES = {
    Fidelity.split_exact: (
        "SPLIT_EXACT: the inputs are direct sums of line bundles, for which 'trivial up to a line "
        "bundle twist' is decidable exactly; the verdict is the bundle-level statement."
    ),
    Fidelity.chern_level: (
        "CHERN_LEVEL: the verdict is about Chern classes and Chow rings only. c(E (x) L) = 1 does "
        "not imply that E (x) L is trivial, so no bundle-level claim is made."
    ),
}


class Reason(str, enum.Enum):
    criterion_satisfied = "CRITERION_SATISFIED"
    multiset_mismatch = "MULTISET_MISMATCH"
    not_twist_trivial = "NOT_TWIST_TRIVIAL"
    not_pullback_twist = "NOT_PULLBACK_TWIST"
    factor_count = "FACTOR_COUNT"
    rank = "RANK"
    twist_mismatch = "TWIST_MISMATCH"
    hypothesis_violation = "HYPOTHESIS_VIOLATION"


@dataclasses.dataclass(frozen=True)
class MultisetOfDims:
    """Positive integers with multiplicity, kept sorted ascending."""

    dims: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 1 for d in self.dims):
            raise ContractError(f"Dimensions must be positive, got {self.dims}.")
        object.__setattr__(self, "dims", tuple(sorted(self.dims)))

    @classmethod
    def of(cls, dims: Iterable[int]) -> "MultisetOfDims":
        return cls(tuple(dims))

    def __len__(self) -> int:
        return len(self.dims)

    def __str__(self) -> str:
        return "{" + ", ".join(str(d) for d in self.dims) + "}"


@dataclasses.dataclass(frozen=True)
class Verdict:
    decision: Decision
    fidelity: Fidelity
    reason: Reason
    reason_text: str
    case: str | None = None
    violated: str | None = None
    witnesses: dict[str, Any] = dataclasses.field(default_factory=dict)
