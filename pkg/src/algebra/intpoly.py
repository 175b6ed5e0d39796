"""
Sparse multivariate polynomials with arbitrary-precision integer coefficients.

Every ring element in this project is carried by an IntPoly: a map from exponent tuples
(monomials) to non-zero Python integers, together with the number of variables. All variables
have degree 1, so the total degree of a monomial is the sum of its exponents.

Instances are immutable; every operation returns a new polynomial in canonical form (no zero
coefficients stored), so equality of polynomials is equality of their term maps.

Monomials are ordered graded-lexicographically, comparing exponents from the *last* variable
backwards. Presentations append fibre variables after base variables, so this puts the newest
variable first, e.g. `u1^2 - x*u1`.
"""
import re
from typing import Iterable, Iterator, Mapping, Sequence

from errors import ContractError, StructuralError

Monomial = tuple[int, ...]


def monomial_key(monomial: Monomial) -> tuple[int, tuple[int, ...]]:
    """Sort key of the graded-lex order; sort with `reverse=True` for descending order."""
    return sum(monomial), tuple(reversed(monomial))


class IntPoly:
    __slots__ = ("var_count", "_terms", "_hash")

    def __init__(self, var_count: int, terms: Mapping[Monomial, int] | None = None):
        if var_count < 0:
            raise ContractError(f"Variable count must be non-negative, got {var_count}.")
        cleaned = {}
        for monomial, coefficient in (terms or {}).items():
            monomial = tuple(monomial)
            if len(monomial) != var_count:
                raise StructuralError(
                    f"Monomial {monomial} does not have {var_count} exponents."
                )
            if any(e < 0 for e in monomial):
                raise ContractError(f"Monomial {monomial} has a negative exponent.")
            if coefficient != 0:
                cleaned[monomial] = int(coefficient)
        self.var_count = var_count
        self._terms = cleaned
        self._hash = None

    # Constructors

    @classmethod
    def zero(cls, var_count: int) -> "IntPoly":
        return cls(var_count)

    @classmethod
    def constant(cls, value: int, var_count: int) -> "IntPoly":
        return cls(var_count, {(0,) * var_count: value})

    @classmethod
    def one(cls, var_count: int) -> "IntPoly":
        return cls.constant(1, var_count)

    @classmethod
    def variable(cls, index: int, var_count: int, coefficient: int = 1) -> "IntPoly":
        if not 0 <= index < var_count:
            raise StructuralError(f"Variable index {index} out of range for {var_count} variables.")
        exponents = [0] * var_count
        exponents[index] = 1
        return cls(var_count, {tuple(exponents): coefficient})

    @classmethod
    def linear_form(cls, coefficients: Sequence[int]) -> "IntPoly":
        """The degree-1 polynomial sum_i coefficients[i] * x_i."""
        var_count = len(coefficients)
        return cls(
            var_count,
            {
                tuple(1 if j == i else 0 for j in range(var_count)): c
                for i, c in enumerate(coefficients)
            },
        )

    @classmethod
    def univariate(cls, coefficients: Sequence[int]) -> "IntPoly":
        """sum_k coefficients[k] * t^k, in one variable."""
        return cls(1, {(k,): c for k, c in enumerate(coefficients)})

    # Inspection

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in graded-lex descending order."""
        for monomial in sorted(self._terms, key=monomial_key, reverse=True):
            yield monomial, self._terms[monomial]

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, degree: int) -> bool:
        """True if every term has total degree `degree` (the zero polynomial always is)."""
        return all(sum(m) == degree for m in self._terms)

    def homogeneous_component(self, degree: int) -> "IntPoly":
        return IntPoly(self.var_count, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def variables_used(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e > 0}

    def linear_coefficients(self) -> list[int]:
        """Coefficient vector of a homogeneous degree-1 polynomial."""
        if not self.is_homogeneous(1):
            raise ContractError(f"{self} is not homogeneous of degree 1.")
        return [
            self._terms.get(tuple(1 if j == i else 0 for j in range(self.var_count)), 0)
            for i in range(self.var_count)
        ]

    def univariate_coefficients(self) -> list[int]:
        """Dense coefficient list [c_0, c_1, ...] of a one-variable polynomial."""
        if self.var_count != 1:
            raise StructuralError(f"Expected a univariate polynomial, got {self.var_count} vars.")
        coefficients = [0] * (self.degree() + 1)
        for (k,), c in self._terms.items():
            coefficients[k] = c
        return coefficients

    # Arithmetic

    def _check_compatible(self, other: "IntPoly"):
        if self.var_count != other.var_count:
            raise StructuralError(
                f"Variable count mismatch: {self.var_count} and {other.var_count}."
            )

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            self._check_compatible(other)
            return other
        if isinstance(other, int):
            return IntPoly.constant(other, self.var_count)
        return NotImplemented

    def __add__(self, other) -> "IntPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coefficient
        return IntPoly(self.var_count, terms)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(self.var_count, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "IntPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(self.var_count, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                terms[monomial] = terms.get(monomial, 0) + c1 * c2
        return IntPoly(self.var_count, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPoly":
        if exponent < 0:
            raise ContractError(f"Exponent must be non-negative, got {exponent}.")
        result = IntPoly.one(self.var_count)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other, self.var_count)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.var_count == other.var_count and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.degree() <= 0:
                # agrees with __eq__ against ints
                self._hash = hash(self._terms.get((0,) * self.var_count, 0))
            else:
                self._hash = hash((self.var_count, frozenset(self._terms.items())))
        return self._hash

    # Rendering

    def render(self, names: Sequence[str] | None = None) -> str:
        """Canonical text, terms in graded-lex descending order, e.g. `3*t^2*u + 1`."""
        if names is None:
            names = [f"x{i}" for i in range(self.var_count)]
        if len(names) != self.var_count:
            raise StructuralError(f"Expected {self.var_count} names, got {len(names)}.")
        if not self._terms:
            return "0"
        pieces = []
        for position, (monomial, coefficient) in enumerate(self.items()):
            factors = [
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, monomial) if e > 0
            ]
            magnitude = abs(coefficient)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if position == 0:
                pieces.append(f"-{body}" if coefficient < 0 else body)
            else:
                pieces.append(f" - {body}" if coefficient < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"IntPoly({self.var_count}, {self._terms!r})"


_TERM = re.compile(r"[+-]?[^+-]+")


def from_text(text: str, names: Sequence[str]) -> IntPoly:
    """Parse the canonical text rendering (or any sum of products of integers and powers)."""
    var_count = len(names)
    index = {name: i for i, name in enumerate(names)}
    compact = text.replace(" ", "")
    if not compact:
        raise ContractError("Empty polynomial text.")
    result = IntPoly.zero(var_count)
    for term in _TERM.findall(compact):
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        coefficient = sign
        exponents = [0] * var_count
        for factor in body.split("*"):
            if not factor:
                raise ContractError(f"Malformed term '{term}' in '{text}'.")
            name, _, power = factor.partition("^")
            if name.isdigit():
                if power:
                    coefficient *= int(name) ** int(power)
                else:
                    coefficient *= int(name)
            elif name in index:
                exponents[index[name]] += int(power) if power else 1
            else:
                raise ContractError(f"Unknown variable '{name}' in '{text}'.")
        result = result + IntPoly(var_count, {tuple(exponents): coefficient})
    if len("".join(_TERM.findall(compact))) != len(compact):
        raise ContractError(f"Malformed polynomial text '{text}'.")
    return result


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    return a + b


def negate(a: IntPoly) -> IntPoly:
    return -a


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    return a * b


def power(a: IntPoly, k: int) -> IntPoly:
    """Repeated squaring; power(a, 0) == 1."""
    return a**k


def coefficient_of(p: IntPoly, monomial: Iterable[int]) -> int:
    monomial = tuple(monomial)
    if len(monomial) != p.var_count:
        raise StructuralError(
            f"Monomial {monomial} does not have {p.var_count} exponents."
        )
    return p.terms.get(monomial, 0)


def substitute_linear(p: IntPoly, images: Sequence[IntPoly]) -> IntPoly:
    """
    Apply the ring homomorphism x_i -> images[i] to p.

    Every image must be homogeneous of degree 1 in one common target variable set, so the map
    preserves the total degree of homogeneous inputs.
    """
    if len(images) != p.var_count:
        raise StructuralError(f"Expected {p.var_count} images, got {len(images)}.")
    if not images:
        return p
    target_count = images[0].var_count
    for i, image in enumerate(images):
        if image.var_count != target_count:
            raise StructuralError(f"Image {i} has {image.var_count} variables, not {target_count}.")
        if not image.is_homogeneous(1):
            raise ContractError(f"Image {i} ({image}) is not homogeneous of degree 1.")

    powers: dict[tuple[int, int], IntPoly] = {}

    def image_power(i: int, e: int) -> IntPoly:
        if (i, e) not in powers:
            powers[i, e] = images[i] ** e
        return powers[i, e]

    result = IntPoly.zero(target_count)
    for monomial, coefficient in p.items():
        term = IntPoly.constant(coefficient, target_count)
        for i, e in enumerate(monomial):
            if e:
                term = term * image_power(i, e)
        result = result + term
    return result
