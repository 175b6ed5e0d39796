"""
Bounded search for graded ring isomorphisms between two presentations.

All rings here are generated in degree 1 and free of finite rank in every degree, so a graded
isomorphism is determined by an invertible integer matrix on degree 1: row i holds the image of
source variable i in the degree-1 basis of the target. A candidate matrix is accepted when every
source relation maps to zero in the target. Such a map is surjective (the matrix is unimodular)
between free groups of equal rank in every degree, hence bijective.

Not finding a matrix with entries in [-B, B] proves nothing about larger entries.
"""
import concurrent.futures
import dataclasses
import itertools
import logging
from typing import Iterator, Sequence

import sympy

from algebra.graded_ring import GradedRingPresentation, normal_form, poincare_polynomial
from algebra.intpoly import IntPoly, substitute_linear
from errors import ContractError, StructuralError

Row = tuple[int, ...]

POINCARE_MISMATCH = "POINCARE_MISMATCH"


def determinant(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 1
    return int(sympy.Matrix([list(row) for row in rows]).det())


@dataclasses.dataclass(frozen=True)
class UniMatrix:
    rows: tuple[Row, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(row) != len(rows) for row in rows):
            raise ContractError(f"Matrix {self.as_list()} is not square.")
        if abs(determinant(rows)) != 1:
            raise ContractError(f"Matrix {self.as_list()} is not unimodular.")

    @classmethod
    def identity(cls, k: int) -> "UniMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def determinant(self) -> int:
        return determinant(self.rows)

    def inverse(self) -> "UniMatrix":
        """Also integral, the determinant being a unit."""
        if not self.rows:
            return self
        inverse = sympy.Matrix([list(row) for row in self.rows]).inv()
        k = self.size
        return UniMatrix(tuple(tuple(int(inverse[i, j]) for j in range(k)) for i in range(k)))

    def as_list(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


@dataclasses.dataclass(frozen=True)
class SearchReport:
    found: UniMatrix | None
    matrices_tried: int
    bound: int
    reason: str | None = None

    @property
    def caveat(self) -> bool:
        """A bounded failure is not a proof of non-isomorphism."""
        return self.found is None and self.reason is None


def row_candidates(k: int, B: int, index: int) -> list[Row]:
    """
    The non-zero rows with entries in [-B, B], closest (in L1 distance) to the identity row
    `index` first, ties broken lexicographically.
    """
    identity_row = tuple(int(j == index) for j in range(k))
    rows = [row for row in itertools.product(range(-B, B + 1), repeat=k) if any(row)]
    return sorted(
        rows, key=lambda row: (sum(abs(a - e) for a, e in zip(row, identity_row)), row)
    )


def enumerate_unimodular(k: int, B: int) -> Iterator[UniMatrix]:
    """Every k x k matrix with entries in [-B, B] and determinant +-1, once, in search order."""
    if k < 1:
        raise ContractError(f"Matrix size must be positive, got {k}.")
    if B < 0:
        raise ContractError(f"Bound must be non-negative, got {B}.")
    candidates = [row_candidates(k, B, i) for i in range(k)]
    for rows in itertools.product(*candidates):
        if abs(determinant(rows)) == 1:
            yield UniMatrix(rows)


def _relation_vanishes(
    R1: GradedRingPresentation, R2: GradedRingPresentation, index: int, rows: Sequence[Row]
) -> bool:
    """Relation `index` of R1 only involves variables up to `index`; later images are zero."""
    images = [IntPoly.linear_form(row) for row in rows]
    images += [IntPoly.zero(R2.var_count)] * (R1.var_count - len(images))
    return normal_form(R2, substitute_linear(R1.relations[index], images)).is_zero()


def _search_partition(
    R1: GradedRingPresentation, R2: GradedRingPresentation, B: int, first_row: Row
) -> tuple[UniMatrix | None, int]:
    """Depth-first search over all matrices starting with `first_row`, in enumeration order."""
    k = R1.var_count
    candidates = [row_candidates(k, B, i) for i in range(k)]
    tried = 0

    def extend(rows: list[Row]) -> UniMatrix | None:
        nonlocal tried
        depth = len(rows)
        if depth == k:
            if abs(determinant(rows)) != 1:
                return None
            tried += 1
            if _relation_vanishes(R1, R2, k - 1, rows):
                return UniMatrix(tuple(rows))
            return None
        for row in candidates[depth]:
            prefix = rows + [row]
            if depth + 1 < k and not _relation_vanishes(R1, R2, depth, prefix):
                continue
            found = extend(prefix)
            if found is not None:
                return found
        return None

    if k > 1 and not _relation_vanishes(R1, R2, 0, [first_row]):
        return None, 0
    return extend([first_row]), tried


def find_graded_iso(
    R1: GradedRingPresentation, R2: GradedRingPresentation, B: int, workers: int = 1
) -> SearchReport:
    """
    The first matrix, in enumeration order, that defines a graded isomorphism R1 -> R2.

    With workers > 1 the first rows are searched in parallel; the result is the same as the
    sequential one, including the number of matrices tried.
    """
    if B < 0:
        raise ContractError(f"Bound must be non-negative, got {B}.")
    if poincare_polynomial(R1) != poincare_polynomial(R2):
        logging.info("Poincaré polynomials differ, no search needed")
        return SearchReport(None, 0, B, reason=POINCARE_MISMATCH)
    if R1.var_count != R2.var_count:
        raise StructuralError(
            f"Presentations with {R1.var_count} and {R2.var_count} variables cannot be compared "
            "by a square matrix."
        )
    k = R1.var_count
    if k == 0:
        return SearchReport(UniMatrix(()), 1, B)

    first_rows = row_candidates(k, B, 0)
    logging.info(f"Searching {len(first_rows)} first rows at bound {B} with {workers} worker(s)")
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            results = executor.map(
                _search_partition,
                itertools.repeat(R1),
                itertools.repeat(R2),
                itertools.repeat(B),
                first_rows,
            )
            results = list(results)
    else:
        results = (_search_partition(R1, R2, B, row) for row in first_rows)

    tried = 0
    for found, tried_in_partition in results:
        tried += tried_in_partition
        if found is not None:
            logging.info(f"Found {found.as_list()} after {tried} candidate matrices")
            return SearchReport(found, tried, B)
    logging.info(f"No matrix found after {tried} candidate matrices")
    return SearchReport(None, tried, B)


def verify_matrix(
    R1: GradedRingPresentation, R2: GradedRingPresentation, A: Sequence[Sequence[int]]
) -> bool:
    """Replay a witness: A is unimodular and maps every relation of R1 to zero in R2."""
    k = R1.var_count
    if R2.var_count != k or len(A) != k or any(len(row) != k for row in A):
        raise ContractError(
            f"Expected a {k} x {k} matrix between rings with {k} and {R2.var_count} variables."
        )
    rows = [tuple(int(a) for a in row) for row in A]
    if abs(determinant(rows)) != 1:
        return False
    return all(_relation_vanishes(R1, R2, i, rows) for i in range(k))
