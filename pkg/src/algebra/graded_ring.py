"""
Presentations of the Chow rings of towers and fibre products of projective bundles over
projective spaces.

A presentation is a list of degree-1 variables together with one relation per variable. Relation
i is homogeneous of degree d_i, contains var_i^{d_i} with coefficient 1, every other term has a
smaller exponent of var_i, and it involves only the variables 0..i. Such a triangular monic
system is a Gröbner basis for the lexicographic order that compares exponents from the last
variable backwards (the leading monomials are coprime pure powers), so rewriting
var_i^{d_i} -> var_i^{d_i} - relation_i terminates and is confluent. The monomials with
exponent_i < d_i for all i form a basis of the ring.
"""
import dataclasses
import functools
import itertools
import logging
import re
from typing import TYPE_CHECKING, Sequence

from algebra.intpoly import IntPoly, Monomial, from_text, monomial_key
from errors import ContractError, RankOneBundleError, StructuralError

if TYPE_CHECKING:  # avoid circular imports; only import while type checking
    from bundles.chern import TotalChernClass

# cached monomial normal forms per presentation
NORMAL_FORM_CACHE_LIMIT = 200_000


def _extend(p: IntPoly, var_count: int) -> IntPoly:
    """Embed p into a ring with more variables (the new variables come last)."""
    padding = (0,) * (var_count - p.var_count)
    return IntPoly(var_count, {m + padding: c for m, c in p.terms.items()})


@dataclasses.dataclass(frozen=True)
class GradedRingPresentation:
    var_names: tuple[str, ...]
    relations: tuple[IntPoly, ...]
    _normal_forms: dict = dataclasses.field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "relations", tuple(self.relations))
        k = len(self.var_names)
        if len(set(self.var_names)) != k:
            raise StructuralError(f"Variable names {self.var_names} are not distinct.")
        if len(self.relations) != k:
            raise StructuralError(f"Expected {k} relations, got {len(self.relations)}.")
        for i, relation in enumerate(self.relations):
            _check_relation(i, relation, k, self.var_names)

    @property
    def var_count(self) -> int:
        return len(self.var_names)

    @functools.cached_property
    def degrees(self) -> tuple[int, ...]:
        """d_i: the degree of relation i."""
        return tuple(relation.degree() for relation in self.relations)

    def top_degree(self) -> int:
        return sum(d - 1 for d in self.degrees)

    # Elements

    def element(self, p: IntPoly) -> "RingElement":
        return normal_form(self, p)

    def zero(self) -> "RingElement":
        return RingElement(self, IntPoly.zero(self.var_count))

    def one(self) -> "RingElement":
        return self.element(IntPoly.one(self.var_count))

    def gen(self, index: int) -> "RingElement":
        return self.element(IntPoly.variable(index, self.var_count))

    def linear(self, coefficients: Sequence[int]) -> "RingElement":
        if len(coefficients) != self.var_count:
            raise StructuralError(
                f"Expected {self.var_count} degree-1 coefficients, got {len(coefficients)}."
            )
        return self.element(IntPoly.linear_form(coefficients))

    def parse(self, text: str) -> "RingElement":
        return self.element(from_text(text, self.var_names))

    # Rendering

    def render(self) -> str:
        """E.g. `Z[x,u1]/(x^2, u1^2 - x*u1)`."""
        if not self.var_names:
            return "Z"
        relations = ", ".join(relation.render(self.var_names) for relation in self.relations)
        return f"Z[{','.join(self.var_names)}]/({relations})"

    def __str__(self) -> str:
        return self.render()


def _check_relation(index: int, relation: IntPoly, var_count: int, names: Sequence[str]):
    if relation.var_count != var_count:
        raise StructuralError(f"Relation {index} has {relation.var_count} variables.")
    degree = relation.degree()
    if degree < 1 or not relation.is_homogeneous(degree):
        raise ContractError(f"Relation {index} ({relation}) is not homogeneous of positive degree.")
    # degree 1 only for the base of P^0 = Z[x]/(x)
    if degree == 1 and index > 0:
        raise ContractError(
            f"Relation {index} ({relation.render(names)}) has degree 1; fibre relations need "
            "degree at least two."
        )
    leading = tuple(degree if j == index else 0 for j in range(var_count))
    if relation.terms.get(leading) != 1:
        raise ContractError(
            f"Relation {index} ({relation.render(names)}) is not monic in {names[index]}^{degree}."
        )
    for monomial in relation.terms:
        if monomial != leading and monomial[index] >= degree:
            raise ContractError(
                f"Relation {index} has a second term of full degree in {names[index]}."
            )
        if any(monomial[j] for j in range(index + 1, var_count)):
            raise ContractError(
                f"Relation {index} involves variables after {names[index]}; the system must be "
                "triangular."
            )


@dataclasses.dataclass(frozen=True)
class RingElement:
    owner: GradedRingPresentation
    value: IntPoly

    def _check_owner(self, other: "RingElement"):
        if self.owner != other.owner:
            raise StructuralError("Ring elements belong to different presentations.")

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, int):
            return self.owner.element(IntPoly.constant(other, self.owner.var_count))
        if isinstance(other, RingElement):
            self._check_owner(other)
            return other
        return NotImplemented

    def __add__(self, other) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.owner, self.value + other.value)

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement(self.owner, -self.value)

    def __sub__(self, other) -> "RingElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.owner, self.value - other.value)

    def __rsub__(self, other) -> "RingElement":
        return (-self) + other

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, int):
            return RingElement(self.owner, self.value * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.owner.element(self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            raise ContractError(f"Exponent must be non-negative, got {exponent}.")
        result = self.owner.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def component(self, degree: int) -> "RingElement":
        return RingElement(self.owner, self.value.homogeneous_component(degree))

    def is_homogeneous(self, degree: int) -> bool:
        return self.value.is_homogeneous(degree)

    def linear_coefficients(self) -> list[int]:
        """Coordinates of a degree-1 element in the variable basis of degree 1."""
        return self.value.linear_coefficients()

    def render(self) -> str:
        return self.value.render(self.owner.var_names)

    def __str__(self) -> str:
        return self.render()


def projective_space_ring(n: int, var_name: str = "x") -> GradedRingPresentation:
    """A*(P^n) = Z[h]/(h^{n+1})."""
    if n < 0:
        raise ContractError(f"Dimension must be non-negative, got {n}.")
    return GradedRingPresentation((var_name,), (IntPoly(1, {(n + 1,): 1}),))


def multiprojective_space_ring(dims: Sequence[int]) -> GradedRingPresentation:
    """A*(P^{n_1} x ... x P^{n_r}); variables x, u1, ..., u_{r-1}."""
    if any(n < 0 for n in dims):
        raise ContractError(f"Dimensions must be non-negative, got {list(dims)}.")
    k = len(dims)
    names = tuple(["x"] + [f"u{i}" for i in range(1, k)]) if k else ()
    relations = [
        IntPoly(k, {tuple(n + 1 if j == i else 0 for j in range(k)): 1})
        for i, n in enumerate(dims)
    ]
    return GradedRingPresentation(names, relations)


def _fibre_relation(
    components: Sequence[IntPoly], rank: int, fibre_index: int, var_count: int
) -> IntPoly:
    """sum_{i=0}^{rank} (-1)^i c_i u^{rank-i}, with u the variable at fibre_index."""
    relation = IntPoly.zero(var_count)
    for i in range(rank + 1):
        c_i = _extend(components[i], var_count) if i < len(components) else None
        if c_i is None or c_i.is_zero():
            continue
        u_power = IntPoly(
            var_count,
            {tuple(rank - i if j == fibre_index else 0 for j in range(var_count)): (-1) ** i},
        )
        relation = relation + c_i * u_power
    return relation


def _append_fibre(
    R: GradedRingPresentation, components: Sequence[IntPoly], rank: int, var_name: str
) -> GradedRingPresentation:
    if rank < 2:
        raise RankOneBundleError(
            f"Projectivizing a bundle of rank {rank} adds no fibre; rank must be at least two."
        )
    var_count = R.var_count + 1
    relation = _fibre_relation(components, rank, R.var_count, var_count)
    relations = tuple(_extend(r, var_count) for r in R.relations) + (relation,)
    return GradedRingPresentation(R.var_names + (var_name,), relations)


def projectivize(
    R: GradedRingPresentation, c: "TotalChernClass", rank: int, var_name: str
) -> GradedRingPresentation:
    """
    A*(P(E)) = A*(X)[u] / (sum_{i=0}^{r+1} (-1)^i c_i(E) u^{r+1-i}) for E of rank r+1 on X.

    Params
    ------
    R: presentation of A*(X)
    c: total Chern class of E, living in R
    rank: r+1, at least two
    var_name: name of the new fibre variable u
    """
    if c.owner != R:
        raise StructuralError("The Chern class does not live in the ring being projectivized.")
    components = [c.component(i).value for i in range(rank + 1)]
    if components[0] != IntPoly.one(R.var_count):
        raise ContractError("The degree-0 component of a total Chern class must be 1.")
    projectivized = _append_fibre(R, components, rank, var_name)
    logging.debug(f"Projectivized {R} along a rank {rank} bundle: {projectivized}")
    return projectivized


def multiprojective_ring(
    R: GradedRingPresentation, factors: Sequence[tuple["TotalChernClass", int]]
) -> GradedRingPresentation:
    """
    A*(P_X(E_1, ..., E_r)): one fibre variable u_i per factor, relation i involving only u_i and
    the variables of the base X (every E_i lives in R = A*(X)).
    """
    ring = R
    for index, (c, rank) in enumerate(factors, start=1):
        if c.owner != R:
            raise StructuralError(f"Chern class of factor {index} does not live in the base ring.")
        components = [c.component(i).value for i in range(rank + 1)]
        ring = _append_fibre(ring, components, rank, f"u{index}")
    return ring


# Normal forms


def _reducible_index(R: GradedRingPresentation, monomial: Monomial) -> int | None:
    for i in reversed(range(R.var_count)):
        if monomial[i] >= R.degrees[i]:
            return i
    return None


def rewrite_positions(R: GradedRingPresentation, p: IntPoly) -> list[tuple[Monomial, int]]:
    """All (monomial, variable) pairs of p at which a relation can be applied."""
    degrees = R.degrees
    return [
        (monomial, i)
        for monomial in sorted(p.terms, key=monomial_key)
        for i in range(R.var_count)
        if monomial[i] >= degrees[i]
    ]


def rewrite(R: GradedRingPresentation, p: IntPoly, monomial: Monomial, index: int) -> IntPoly:
    """Apply relation `index` once to the term of p at `monomial`."""
    coefficient = p.terms.get(monomial, 0)
    d = R.degrees[index]
    if coefficient == 0 or monomial[index] < d:
        raise ContractError(f"Relation {index} does not apply to monomial {monomial}.")
    cofactor = IntPoly(
        R.var_count,
        {tuple(e - d if j == index else e for j, e in enumerate(monomial)): coefficient},
    )
    return p - cofactor * R.relations[index]


def _tail(R: GradedRingPresentation, monomial: Monomial, index: int) -> list[tuple[Monomial, int]]:
    """monomial = sum(coefficient * shifted) modulo relation `index`."""
    d = R.degrees[index]
    rest = tuple(e - d if j == index else e for j, e in enumerate(monomial))
    return [
        (tuple(a + b for a, b in zip(rest, tail_monomial)), -coefficient)
        for tail_monomial, coefficient in R.relations[index].terms.items()
        if tail_monomial[index] != d
    ]


def _monomial_normal_form(R: GradedRingPresentation, monomial: Monomial) -> IntPoly:
    cache = R._normal_forms
    pending = [monomial]
    while pending:
        current = pending[-1]
        if current in cache:
            pending.pop()
            continue
        index = _reducible_index(R, current)
        if index is None:
            cache[current] = IntPoly(R.var_count, {current: 1})
            pending.pop()
            continue
        tail = _tail(R, current, index)
        missing = [shifted for shifted, _ in tail if shifted not in cache]
        if missing:
            pending.extend(missing)
            continue
        result = IntPoly.zero(R.var_count)
        for shifted, coefficient in tail:
            result = result + cache[shifted] * coefficient
        cache[current] = result
        pending.pop()
    return cache[monomial]


def normal_form(R: GradedRingPresentation, p: IntPoly) -> RingElement:
    """The fully reduced representative of p; idempotent and compatible with + and x."""
    if p.var_count != R.var_count:
        raise StructuralError(
            f"Polynomial has {p.var_count} variables, the ring has {R.var_count}."
        )
    result = IntPoly.zero(R.var_count)
    for monomial, coefficient in p.terms.items():
        result = result + _monomial_normal_form(R, monomial) * coefficient
    if len(R._normal_forms) > NORMAL_FORM_CACHE_LIMIT:
        logging.debug(f"Dropping {len(R._normal_forms)} cached normal forms of {R}")
        R._normal_forms.clear()
    return RingElement(R, result)


def is_zero(R: GradedRingPresentation, e: RingElement) -> bool:
    if e.owner != R:
        raise StructuralError("Element does not belong to this presentation.")
    return normal_form(R, e.value).is_zero()


# Graded ranks


def monomial_basis(R: GradedRingPresentation, k: int) -> list[Monomial]:
    """Basis monomials of degree k, graded-lex descending."""
    if k < 0:
        return []
    ranges = [range(min(d, k + 1)) for d in R.degrees]
    basis = [m for m in itertools.product(*ranges) if sum(m) == k]
    return sorted(basis, key=monomial_key, reverse=True)


def graded_rank(R: GradedRingPresentation, k: int) -> int:
    """rk A^k, counted on the monomial basis."""
    return len(monomial_basis(R, k))


def poincare_polynomial(R: GradedRingPresentation) -> IntPoly:
    """prod_i (1 + t + ... + t^{d_i - 1})."""
    result = IntPoly.one(1)
    for d in R.degrees:
        result = result * IntPoly.univariate([1] * d)
    return result


def poincare_by_counting(R: GradedRingPresentation) -> IntPoly:
    """sum_k rk A^k t^k; agrees with `poincare_polynomial`."""
    return IntPoly.univariate([graded_rank(R, k) for k in range(R.top_degree() + 1)])


def render_poincare(P: IntPoly) -> str:
    """Ascending powers of t, e.g. `1 + 2*t + t^2`."""
    pieces = []
    for k, c in enumerate(P.univariate_coefficients()):
        if c == 0:
            continue
        power = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if not power:
            body = str(abs(c))
        elif abs(c) == 1:
            body = power
        else:
            body = f"{abs(c)}*{power}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces) or "0"


_PRESENTATION = re.compile(r"^\s*Z\s*(?:\[(?P<names>[^\]]*)\]\s*/\s*\((?P<relations>.*)\))?\s*$")


def parse_presentation(text: str) -> GradedRingPresentation:
    """Inverse of `GradedRingPresentation.render`."""
    match = _PRESENTATION.match(text)
    if match is None:
        raise ContractError(f"Not a presentation: '{text}'.")
    if match.group("names") is None:
        return GradedRingPresentation((), ())
    names = tuple(name.strip() for name in match.group("names").split(","))
    relations = [from_text(r, names) for r in match.group("relations").split(",")]
    return GradedRingPresentation(names, relations)
