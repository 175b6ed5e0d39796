"""
Bundle descriptors and total Chern class calculus.

Two kinds of input are supported. A SplitBundle is a direct sum of line bundles, given by the
first Chern classes of its summands; for these, "trivial up to a line bundle twist" is decidable
exactly (all summand classes are equal). A ChernVector only records the Chern classes of a
bundle on P^n; decisions made from it are statements about Chow rings, not about bundles.
"""
import dataclasses
import math
from typing import Sequence

from algebra.graded_ring import (
    GradedRingPresentation,
    RingElement,
    normal_form,
    projective_space_ring,
)
from algebra.intpoly import IntPoly
from errors import ContractError, RankOneBundleError, StructuralError


@dataclasses.dataclass(frozen=True)
class TotalChernClass:
    """c = 1 + c_1 + c_2 + ..., stored as a single element in normal form."""

    value: RingElement

    def __post_init__(self):
        owner = self.value.owner
        object.__setattr__(self, "value", normal_form(owner, self.value.value))
        if self.value.component(0).value != IntPoly.one(owner.var_count):
            raise ContractError(f"A total Chern class must start with 1, got {self.value}.")

    @classmethod
    def one(cls, R: GradedRingPresentation) -> "TotalChernClass":
        return cls(R.one())

    @classmethod
    def from_components(
        cls, R: GradedRingPresentation, components: Sequence[RingElement]
    ) -> "TotalChernClass":
        """From c_1, c_2, ...; c_i must be homogeneous of degree i."""
        value = R.one()
        for i, c_i in enumerate(components, start=1):
            if c_i.owner != R:
                raise StructuralError(f"Chern class c_{i} does not live in {R}.")
            if not c_i.is_homogeneous(i):
                raise ContractError(f"Chern class c_{i} = {c_i} is not homogeneous of degree {i}.")
            value = value + c_i
        return cls(value)

    @property
    def owner(self) -> GradedRingPresentation:
        return self.value.owner

    def component(self, i: int) -> RingElement:
        return self.value.component(i)

    @property
    def components(self) -> tuple[RingElement, ...]:
        """c_0, ..., c_top."""
        return tuple(self.component(i) for i in range(self.owner.top_degree() + 1))

    def check_rank(self, rank: int):
        if rank < 1:
            raise ContractError(f"Rank must be positive, got {rank}.")
        for i in range(rank + 1, self.owner.top_degree() + 1):
            if not self.component(i).is_zero():
                raise ContractError(f"c_{i} = {self.component(i)} is non-zero above rank {rank}.")

    def render(self) -> str:
        return self.value.render()

    def __str__(self) -> str:
        return self.render()


@dataclasses.dataclass(frozen=True)
class ChernVector:
    """
    Chern classes c_i(E) = a_i h^i of a bundle E of rank N on P^n, for i = 1..min(N, n). Shorter
    coefficient lists are padded with zeros.
    """

    base_dim: int
    rank: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.base_dim < 0:
            raise ContractError(f"Base dimension must be non-negative, got {self.base_dim}.")
        if self.rank < 2:
            raise RankOneBundleError(f"A bundle of rank {self.rank} has no projectivization.")
        k = min(self.rank, self.base_dim)
        coeffs = tuple(int(a) for a in self.coeffs)
        if len(coeffs) > k:
            raise ContractError(
                f"At most min(rank, base dimension) = {k} Chern coefficients allowed, "
                f"got {len(coeffs)}."
            )
        object.__setattr__(self, "coeffs", coeffs + (0,) * (k - len(coeffs)))

    @classmethod
    def from_split(cls, base_dim: int, twists: Sequence[int]) -> "ChernVector":
        """The Chern vector of O(a_1) + ... + O(a_N) on P^n: elementary symmetric functions."""
        product = IntPoly.one(1)
        for a in twists:
            product = product * IntPoly.univariate([1, a])
        coefficients = product.univariate_coefficients()
        k = min(len(twists), base_dim)
        return cls(base_dim, len(twists), tuple(coefficients[1 : k + 1]))

    def ring(self) -> GradedRingPresentation:
        return projective_space_ring(self.base_dim)

    def total(
        self, R: GradedRingPresentation | None = None, image_of_h: RingElement | None = None
    ) -> TotalChernClass:
        """The total Chern class in A*(P^n), or its pullback to R along h -> image_of_h."""
        if R is None:
            R = self.ring()
            image_of_h = R.gen(0)
        if image_of_h is None:
            raise ContractError("An image of the hyperplane class is needed to pull back.")
        return pullback_chern(self, R, image_of_h)


@dataclasses.dataclass(frozen=True)
class SplitBundle:
    owner: GradedRingPresentation
    summand_classes: tuple[RingElement, ...]

    def __post_init__(self):
        classes = tuple(self.summand_classes)
        object.__setattr__(self, "summand_classes", classes)
        if len(classes) < 2:
            raise RankOneBundleError(
                f"A split bundle needs at least two summands, got {len(classes)}."
            )
        for index, lambda_ in enumerate(classes):
            if lambda_.owner != self.owner:
                raise StructuralError(f"Summand {index} does not live in {self.owner}.")
            if not lambda_.is_homogeneous(1):
                raise ContractError(f"Summand class {lambda_} is not homogeneous of degree 1.")

    @classmethod
    def on_projective_space(cls, base_dim: int, twists: Sequence[int]) -> "SplitBundle":
        """O(a_1) + ... + O(a_N) on P^n."""
        R = projective_space_ring(base_dim)
        h = R.gen(0)
        return cls(R, tuple(h * a for a in twists))

    @property
    def rank(self) -> int:
        return len(self.summand_classes)

    @property
    def base_dim(self) -> int:
        """The n of P^n, for bundles on a projective space."""
        if self.owner.var_count != 1:
            raise StructuralError(f"{self.owner} is not the Chow ring of a projective space.")
        return self.owner.degrees[0] - 1

    def twists(self) -> list[int]:
        """The integers a_k of O(a_k), for bundles on a projective space."""
        if self.owner.var_count != 1:
            raise StructuralError(f"{self.owner} is not the Chow ring of a projective space.")
        return [lambda_.linear_coefficients()[0] for lambda_ in self.summand_classes]

    def direct_sum(self, other: "SplitBundle") -> "SplitBundle":
        if other.owner != self.owner:
            raise StructuralError("Direct sum of bundles on different bases.")
        return SplitBundle(self.owner, self.summand_classes + other.summand_classes)

    def chern_vector(self) -> ChernVector:
        return ChernVector.from_split(self.base_dim, self.twists())


def total_chern(b: SplitBundle) -> TotalChernClass:
    """Whitney: c(L_1 + ... + L_N) = prod (1 + c_1(L_k))."""
    value = b.owner.one()
    for lambda_ in b.summand_classes:
        value = value * (lambda_ + 1)
    return TotalChernClass(value)


def _check_degree_one(R: GradedRingPresentation, lambda_: RingElement, what: str):
    if lambda_.owner != R:
        raise StructuralError(f"The {what} does not live in {R}.")
    if not lambda_.is_homogeneous(1):
        raise ContractError(f"The {what} {lambda_} is not homogeneous of degree 1.")


def twist(c: TotalChernClass, rank: int, lambda_: RingElement) -> TotalChernClass:
    """
    c(E (x) L) for E of the given rank and c_1(L) = lambda_:
    c_i(E (x) L) = sum_{j <= i} binom(N - j, i - j) c_j(E) lambda_^{i - j}.
    """
    R = c.owner
    _check_degree_one(R, lambda_, "twisting class")
    c.check_rank(rank)
    powers = [R.one()]
    for _ in range(rank):
        powers.append(powers[-1] * lambda_)
    components = c.components
    value = R.zero()
    for i in range(min(rank, R.top_degree()) + 1):
        for j in range(i + 1):
            if components[j].is_zero():
                continue
            value = value + components[j] * powers[i - j] * math.comb(rank - j, i - j)
    return TotalChernClass(value)


def _divide_in_degree_one(
    R: GradedRingPresentation, element: RingElement, divisor: int
) -> RingElement | None:
    """Exact division in the free degree-1 lattice; None if some coordinate is not divisible."""
    coefficients = element.linear_coefficients()
    if any(a % divisor for a in coefficients):
        return None
    return R.linear([a // divisor for a in coefficients])


def is_trivial_up_to_twist(c: TotalChernClass, rank: int) -> RingElement | None:
    """The unique lambda with c = (1 + lambda)^rank, if there is one."""
    R = c.owner
    lambda_ = _divide_in_degree_one(R, c.component(1), rank)
    if lambda_ is None:
        return None
    if ((lambda_ + 1) ** rank) != c.value:
        return None
    return lambda_


def is_constant_twist(b: SplitBundle) -> RingElement | None:
    """The common summand class, if all summands are the same line bundle."""
    first = b.summand_classes[0]
    if all(lambda_ == first for lambda_ in b.summand_classes[1:]):
        return first
    return None


def normalize_twist(c: TotalChernClass, rank: int) -> TotalChernClass:
    """Twist by -lambda when c = (1 + lambda)^rank, giving 1; other classes are returned as is."""
    lambda_ = is_trivial_up_to_twist(c, rank)
    if lambda_ is None:
        return c
    return twist(c, rank, -lambda_)


def pullback_chern(
    c: ChernVector, R: GradedRingPresentation, image_of_h: RingElement
) -> TotalChernClass:
    """Substitute h -> image_of_h in 1 + a_1 h + ... + a_k h^k and reduce in R."""
    _check_degree_one(R, image_of_h, "image of the hyperplane class")
    value = R.one()
    power = R.one()
    for a in c.coeffs:
        power = power * image_of_h
        if a:
            value = value + power * a
    return TotalChernClass(value)


def is_pullback_twist(
    target: TotalChernClass, rank: int, source: ChernVector, image_of_h: RingElement
) -> RingElement | None:
    """The lambda with target = twist(pullback(source), lambda), if there is one."""
    if source.rank != rank:
        raise ContractError(
            f"Pullback-twist needs equal ranks, got {rank} and {source.rank}."
        )
    R = target.owner
    pulled = pullback_chern(source, R, image_of_h)
    lambda_ = _divide_in_degree_one(R, target.component(1) - pulled.component(1), rank)
    if lambda_ is None:
        return None
    if twist(pulled, rank, lambda_) != target:
        return None
    return lambda_
