"""
Schemas of the documents read and written by the command line.

These objects are different from the domain objects in algebra/, bundles/, decide/ and oracle/:
the documents describe bases, bundles and towers the way a user writes them down (dimensions,
twists, coefficient lists), while the domain objects are presentations and ring elements. The
converters in converters/document_converter.py translate between the two.

Chern data of tower levels is given per degree i as a coefficient list over the monomial basis
of degree i of the level's base ring, in the order printed by the `ring` subcommand (graded-lex
descending, the newest variable most significant). When that basis has a single element, a
plain integer may be given instead of a list.
"""
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, Field, model_validator


class ProjectiveSpace(BaseModel):
    kind: Literal["projective_space"] = "projective_space"
    dim: int = Field(ge=0)


class SplitBundleDescription(BaseModel):
    """O(a_1) + ... + O(a_N) on P^base."""

    kind: Literal["split_bundle"] = "split_bundle"
    base: int | None = Field(default=None, ge=0)
    twists: list[int] = Field(min_length=2)


class ChernBundleDescription(BaseModel):
    """A bundle of the given rank on P^base with c_i = coeffs[i-1] * h^i."""

    kind: Literal["chern_bundle"] = "chern_bundle"
    base: int | None = Field(default=None, ge=0)
    rank: int = Field(ge=2)
    coeffs: list[int] = Field(default_factory=list)


BundleDescription = Annotated[
    Union[SplitBundleDescription, ChernBundleDescription], Field(discriminator="kind")
]


class TowerLevel(BaseModel):
    """
    A bundle on the ring of the previous level, given either by its Chern classes c_1, c_2, ...
    or, if it is split, by the first Chern classes of its summands (degree-1 coefficient lists).
    """

    rank: int | None = Field(default=None, ge=2)
    chern: list[int | list[int]] | None = None
    twists: list[int | list[int]] | None = Field(default=None, min_length=2)

    @model_validator(mode="after")
    def _check_one_description(self) -> "TowerLevel":
        if (self.chern is None) == (self.twists is None):
            raise ValueError("exactly one of 'chern' and 'twists' must be given")
        if self.twists is not None and self.rank is not None and self.rank != len(self.twists):
            raise ValueError(f"rank {self.rank} does not match {len(self.twists)} twists")
        if self.chern is not None and self.rank is None:
            raise ValueError("'rank' is required together with 'chern'")
        return self

    @property
    def bundle_rank(self) -> int:
        return self.rank if self.rank is not None else len(self.twists)


class Tower(BaseModel):
    kind: Literal["tower"] = "tower"
    base: int = Field(ge=0)
    levels: list[TowerLevel] = Field(min_length=1)


class Multiproj(BaseModel):
    kind: Literal["multiproj"] = "multiproj"
    base: int = Field(ge=0)
    bundles: list[BundleDescription] = Field(min_length=1)


class Presentation(BaseModel):
    """A presentation as printed by the `ring` subcommand."""

    kind: Literal["presentation"] = "presentation"
    variables: list[str]
    relations: list[str]


SpaceDescription = Annotated[
    Union[ProjectiveSpace, Tower, Multiproj, Presentation], Field(discriminator="kind")
]


class RingQuery(BaseModel):
    query: Literal["ring"] | None = None
    space: SpaceDescription


class PoincareQuery(BaseModel):
    query: Literal["poincare"] | None = None
    space: SpaceDescription | None = None
    polynomial: list[int] | None = None

    @model_validator(mode="after")
    def _check_one_source(self) -> "PoincareQuery":
        if (self.space is None) == (self.polynomial is None):
            raise ValueError("exactly one of 'space' and 'polynomial' must be given")
        return self


class DecidePbQuery(BaseModel):
    query: Literal["decide-pb"] | None = None
    E: BundleDescription
    F: BundleDescription


class DecidePbSamebaseQuery(BaseModel):
    query: Literal["decide-pb-samebase"] | None = None
    E: SplitBundleDescription
    F: SplitBundleDescription


class MultiprojSplit(BaseModel):
    base: int = Field(ge=0)
    bundles: list[SplitBundleDescription] = Field(min_length=1)


class DecideMpbQuery(BaseModel):
    query: Literal["decide-mpb"] | None = None
    E: MultiprojSplit
    F: MultiprojSplit


class Tower3(BaseModel):
    base: int = Field(ge=0)
    levels: list[TowerLevel] = Field(min_length=2, max_length=2)


class DecideTower3Query(BaseModel):
    query: Literal["decide-tower3"] | None = None
    E: Tower3
    F: Tower3


class Cor43Query(BaseModel):
    query: Literal["cor43"] | None = None
    E: BundleDescription
    F: BundleDescription


class OracleQuery(BaseModel):
    query: Literal["oracle"] | None = None
    R1: SpaceDescription
    R2: SpaceDescription
    bound: int | None = Field(default=None, ge=0)


# Output


class VerdictRecord(BaseModel):
    decision: str
    fidelity: str
    reason: str
    reason_text: str
    case: str | None = None
    violated: str | None = None
    witnesses: dict[str, Any] = Field(default_factory=dict)


class RingRecord(BaseModel):
    """Can be given back as a space description of kind `presentation`."""

    kind: Literal["presentation"] = "presentation"
    presentation: str
    variables: list[str]
    relations: list[str]
    poincare: str
    graded_ranks: list[int]
    basis: dict[str, list[str]] | None = None


class SearchRecord(BaseModel):
    found: bool
    matrix: list[list[int]] | None = None
    verified: bool | None = None
    matrices_tried: int
    bound: int
    caveat: bool
    reason: str | None = None


class OutputDocument(BaseModel):
    command: str
    verdict: VerdictRecord | None = None
    ring: RingRecord | None = None
    rings: list[RingRecord] | None = None
    poincare: str | None = None
    multiset: list[int] | None = None
    search: SearchRecord | None = None
    fidelity_note: str | None = None
    error: str | None = None
    exit_code: int | None = None
