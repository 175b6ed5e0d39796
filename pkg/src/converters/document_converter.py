"""
Converting between the external documents (schemas.py) and the domain objects
"""
import json
from typing import Sequence

import schemas
from algebra.graded_ring import (
    GradedRingPresentation,
    RingElement,
    graded_rank,
    monomial_basis,
    multiprojective_ring,
    parse_presentation,
    poincare_polynomial,
    projective_space_ring,
    projectivize,
    render_poincare,
)
from algebra.intpoly import IntPoly
from bundles.chern import ChernVector, SplitBundle, TotalChernClass, total_chern
from decide.verdict import Verdict
from errors import ChowError, InputDocumentError
from oracle.search import SearchReport


def _base_of(bundle: schemas.BundleDescription, base: int | None, path: str) -> int:
    if bundle.base is None:
        if base is None:
            raise InputDocumentError(f"{path}.base: field required")
        return base
    if base is not None and bundle.base != base:
        raise InputDocumentError(f"{path}.base: expected {base}, got {bundle.base}")
    return bundle.base


def bundle_to_chern_vector(
    bundle: schemas.BundleDescription, path: str, base: int | None = None
) -> ChernVector:
    base_dim = _base_of(bundle, base, path)
    try:
        if isinstance(bundle, schemas.SplitBundleDescription):
            return ChernVector.from_split(base_dim, bundle.twists)
        return ChernVector(base_dim, bundle.rank, tuple(bundle.coeffs))
    except ChowError as e:
        raise InputDocumentError(f"{path}: {e.detail}")


def bundle_to_split(
    bundle: schemas.SplitBundleDescription, path: str, base: int | None = None
) -> SplitBundle:
    base_dim = _base_of(bundle, base, path)
    return SplitBundle.on_projective_space(base_dim, bundle.twists)


def _element(R: GradedRingPresentation, degree: int, coefficients: int | list[int], path: str):
    basis = monomial_basis(R, degree)
    if isinstance(coefficients, int):
        if len(basis) == 1:
            coefficients = [coefficients]
        elif not basis and coefficients == 0:
            coefficients = []
        else:
            raise InputDocumentError(
                f"{path}: the degree-{degree} basis of {R} has {len(basis)} elements, give a list"
            )
    if len(coefficients) != len(basis):
        names = [IntPoly(R.var_count, {m: 1}).render(R.var_names) for m in basis]
        raise InputDocumentError(
            f"{path}: expected {len(basis)} coefficients over the basis {names}, "
            f"got {len(coefficients)}"
        )
    value = IntPoly(R.var_count, dict(zip(basis, coefficients)))
    return R.element(value)


def level_to_chern_class(
    R: GradedRingPresentation, level: schemas.TowerLevel, path: str
) -> TotalChernClass:
    """The total Chern class of a tower level, living in the ring R of the level below."""
    if level.twists is not None:
        classes = [
            _element(R, 1, twist, f"{path}.twists.{i}") for i, twist in enumerate(level.twists)
        ]
        try:
            return total_chern(SplitBundle(R, tuple(classes)))
        except ChowError as e:
            raise InputDocumentError(f"{path}.twists: {e.detail}")
    limit = min(level.bundle_rank, R.top_degree())
    if len(level.chern) > limit:
        raise InputDocumentError(
            f"{path}.chern: at most min(rank, top degree) = {limit} Chern classes allowed, "
            f"got {len(level.chern)}"
        )
    components = [
        _element(R, i, c_i, f"{path}.chern.{i - 1}") for i, c_i in enumerate(level.chern, start=1)
    ]
    try:
        return TotalChernClass.from_components(R, components)
    except ChowError as e:
        raise InputDocumentError(f"{path}.chern: {e.detail}")


def level_to_chern_vector(base_dim: int, level: schemas.TowerLevel, path: str) -> ChernVector:
    """The first level of a tower, as a Chern vector on P^base_dim."""
    R = projective_space_ring(base_dim)
    c = level_to_chern_class(R, level, path)
    k = min(level.bundle_rank, base_dim)
    coeffs = [c.component(i).value.terms.get((i,), 0) for i in range(1, k + 1)]
    try:
        return ChernVector(base_dim, level.bundle_rank, tuple(coeffs))
    except ChowError as e:
        raise InputDocumentError(f"{path}: {e.detail}")


def tower_rings(
    base_dim: int, levels: Sequence[schemas.TowerLevel], path: str
) -> tuple[list[tuple[GradedRingPresentation, TotalChernClass]], GradedRingPresentation]:
    """For every level, the ring it lives on and its total Chern class; and the top ring."""
    R = projective_space_ring(base_dim)
    result = []
    for index, level in enumerate(levels):
        level_path = f"{path}.levels.{index}"
        c = level_to_chern_class(R, level, level_path)
        result.append((R, c))
        try:
            R = projectivize(R, c, level.bundle_rank, f"u{index + 1}")
        except ChowError as e:
            raise InputDocumentError(f"{level_path}: {e.detail}")
    return result, R


def space_to_ring(space: schemas.SpaceDescription, path: str) -> GradedRingPresentation:
    try:
        if isinstance(space, schemas.ProjectiveSpace):
            return projective_space_ring(space.dim)
        if isinstance(space, schemas.Presentation):
            text = f"Z[{','.join(space.variables)}]/({', '.join(space.relations)})"
            return parse_presentation(text) if space.variables else GradedRingPresentation((), ())
        if isinstance(space, schemas.Tower):
            _, R = tower_rings(space.base, space.levels, path)
            return R
        factors = []
        for i, bundle in enumerate(space.bundles):
            vector = bundle_to_chern_vector(bundle, f"{path}.bundles.{i}", space.base)
            factors.append((vector.total(), vector.rank))
        return multiprojective_ring(projective_space_ring(space.base), factors)
    except InputDocumentError:
        raise
    except ChowError as e:
        raise InputDocumentError(f"{path}: {e.detail}")


def ring_to_record(R: GradedRingPresentation, with_basis: bool = True) -> schemas.RingRecord:
    basis = None
    if with_basis:
        basis = {
            str(k): [IntPoly(R.var_count, {m: 1}).render(R.var_names) for m in monomial_basis(R, k)]
            for k in range(1, R.top_degree() + 1)
        }
    return schemas.RingRecord(
        presentation=R.render(),
        variables=list(R.var_names),
        relations=[relation.render(R.var_names) for relation in R.relations],
        poincare=render_poincare(poincare_polynomial(R)),
        graded_ranks=[graded_rank(R, k) for k in range(R.top_degree() + 1)],
        basis=basis,
    )


def _witness_value(value):
    if isinstance(value, RingElement):
        return value.render()
    if isinstance(value, dict):
        return {k: _witness_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_witness_value(v) for v in value]
    return value


def verdict_to_record(verdict: Verdict) -> schemas.VerdictRecord:
    return schemas.VerdictRecord(
        decision=verdict.decision.value,
        fidelity=verdict.fidelity.value,
        reason=verdict.reason.value,
        reason_text=verdict.reason_text,
        case=verdict.case,
        violated=verdict.violated,
        witnesses={k: _witness_value(v) for k, v in verdict.witnesses.items()},
    )


def report_to_record(report: SearchReport, verified: bool | None) -> schemas.SearchRecord:
    return schemas.SearchRecord(
        found=report.found is not None,
        matrix=report.found.as_list() if report.found is not None else None,
        verified=verified,
        matrices_tried=report.matrices_tried,
        bound=report.bound,
        caveat=report.caveat,
        reason=report.reason,
    )


def output_to_json(output: schemas.OutputDocument) -> str:
    return json.dumps(output.model_dump(mode="json", exclude_none=True), sort_keys=True, indent=2)


def output_to_text(output: schemas.OutputDocument) -> str:
    lines = []
    if output.error is not None:
        lines.append(f"error: {output.error}")
    if output.ring is not None:
        lines += [f"Presentation: {output.ring.presentation}", f"Poincaré: {output.ring.poincare}"]
    for index, ring in enumerate(output.rings or [], start=1):
        lines.append(f"R{index}: {ring.presentation}")
    if output.poincare is not None:
        lines.append(f"Poincaré: {output.poincare}")
    if output.multiset is not None:
        lines.append(f"Multiset: {{{', '.join(str(d) for d in output.multiset)}}}")
    if output.verdict is not None:
        verdict = output.verdict
        lines += [
            f"Decision: {verdict.decision}",
            f"Fidelity: {verdict.fidelity}",
            f"Reason: {verdict.reason} ({verdict.reason_text})",
        ]
        if verdict.case is not None:
            lines.append(f"Case: {verdict.case}")
        if verdict.violated is not None:
            lines.append(f"Violated: {verdict.violated}")
        for key in sorted(verdict.witnesses):
            lines.append(f"  {key}: {json.dumps(verdict.witnesses[key], sort_keys=True)}")
    if output.search is not None:
        search = output.search
        if search.found:
            lines.append(f"Found: {search.matrix} (verified: {search.verified})")
        elif search.reason is not None:
            lines.append(f"Not found: {search.reason}")
        else:
            lines.append(
                f"Not found with entries in [-{search.bound}, {search.bound}]. This does not prove "
                "that the rings are not isomorphic."
            )
        lines.append(f"Matrices tried: {search.matrices_tried}")
    if output.fidelity_note is not None:
        lines.append(output.fidelity_note)
    return "\n".join(lines)
