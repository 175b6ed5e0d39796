"""
Decision procedures for isomorphisms of projective bundles, multiprojective bundles and height-3
towers over projective spaces.

Every procedure returns a Verdict. ISO / NOT_ISO are only returned where the underlying criterion
is an equivalence under the procedure's hypotheses; the tower classification and the stable
triviality report only check necessary conditions and answer CONSISTENT / RULED_OUT. When the
hypotheses themselves fail, a HypothesisViolation is raised; `declined_verdict` turns it into a
verdict for callers that must always produce one.
"""
import dataclasses
from typing import Callable, Sequence

from algebra.graded_ring import (
    GradedRingPresentation,
    RingElement,
    multiprojective_ring,
    poincare_polynomial,
    projective_space_ring,
    projectivize,
)
from bundles.chern import (
    ChernVector,
    SplitBundle,
    TotalChernClass,
    is_constant_twist,
    is_pullback_twist,
    is_trivial_up_to_twist,
    total_chern,
)
from decide.multiset import multiset_from_poincare, multiset_of_product
from decide.verdict import Decision, Fidelity, MultisetOfDims, Reason, Verdict
from errors import ContractError, HypothesisViolation, StructuralError


def declined_verdict(error: HypothesisViolation, fidelity: Fidelity) -> Verdict:
    return Verdict(
        decision=Decision.declined,
        fidelity=fidelity,
        reason=Reason.hypothesis_violation,
        reason_text=error.detail,
    )


def _degree(lambda_: RingElement) -> int:
    """The a of O(a), for a degree-1 class on a projective space."""
    return lambda_.linear_coefficients()[0]


def decide_pb_chow(E: ChernVector, F: ChernVector) -> Verdict:
    """
    For m != n, A*(P(E)) and A*(P(F)) are isomorphic as graded rings iff rk E - 1 = n,
    rk F - 1 = m, and c(E (x) L) = 1 and c(F (x) M) = 1 for some line bundles L and M.
    """
    m, n = E.base_dim, F.base_dim
    if m == n:
        raise HypothesisViolation(
            f"Both bundles live on P^{m}; the Chow-level criterion needs different bases. Give "
            "both as split bundles to compare them exactly."
        )
    dims_E = multiset_of_product([m, E.rank - 1])
    dims_F = multiset_of_product([n, F.rank - 1])
    witnesses = {"multiset_E": list(dims_E.dims), "multiset_F": list(dims_F.dims)}
    if dims_E != dims_F:
        return Verdict(
            decision=Decision.not_iso,
            fidelity=Fidelity.chern_level,
            reason=Reason.multiset_mismatch,
            reason_text=(
                f"The Poincaré polynomials differ: {{m, rk E - 1}} = {dims_E} but "
                f"{{n, rk F - 1}} = {dims_F}."
            ),
            witnesses=witnesses,
        )
    for label, bundle in (("E", E), ("F", F)):
        lambda_ = is_trivial_up_to_twist(bundle.total(), bundle.rank)
        if lambda_ is None:
            return Verdict(
                decision=Decision.not_iso,
                fidelity=Fidelity.chern_level,
                reason=Reason.not_twist_trivial,
                reason_text=f"c({label}) is not of the form (1 + a*h)^{bundle.rank}.",
                violated=label,
                witnesses=witnesses,
            )
        a = _degree(lambda_)
        witnesses[f"lambda_{label}"] = a
        witnesses["L" if label == "E" else "M"] = -a
    return Verdict(
        decision=Decision.iso,
        fidelity=Fidelity.chern_level,
        reason=Reason.criterion_satisfied,
        reason_text=(
            f"rk E - 1 = {n}, rk F - 1 = {m}, c(E (x) O({witnesses['L']})) = 1 and "
            f"c(F (x) O({witnesses['M']})) = 1."
        ),
        witnesses=witnesses,
    )


def decide_pb_split_same_base(E: SplitBundle, F: SplitBundle) -> Verdict:
    """Split bundles on the same P^n: P(E) = P(F) iff E = F (x) O(a) for some a."""
    if E.base_dim != F.base_dim:
        raise HypothesisViolation(
            f"The bundles live on P^{E.base_dim} and P^{F.base_dim}; use decide-pb for different "
            "bases."
        )
    if E.rank != F.rank:
        return Verdict(
            decision=Decision.not_iso,
            fidelity=Fidelity.split_exact,
            reason=Reason.rank,
            reason_text=f"The ranks differ: {E.rank} and {F.rank}.",
        )
    twists_E, twists_F = sorted(E.twists()), sorted(F.twists())
    normalized_E = [a - twists_E[0] for a in twists_E]
    normalized_F = [b - twists_F[0] for b in twists_F]
    witnesses = {"normalized_E": normalized_E, "normalized_F": normalized_F}
    if normalized_E != normalized_F:
        return Verdict(
            decision=Decision.not_iso,
            fidelity=Fidelity.split_exact,
            reason=Reason.twist_mismatch,
            reason_text=(
                f"The twists differ by more than a common shift: {normalized_E} and "
                f"{normalized_F} after subtracting the minimum."
            ),
            witnesses=witnesses,
        )
    shift = twists_E[0] - twists_F[0]
    witnesses["shift"] = shift
    return Verdict(
        decision=Decision.iso,
        fidelity=Fidelity.split_exact,
        reason=Reason.criterion_satisfied,
        reason_text=f"E = F (x) O({shift}).",
        witnesses=witnesses,
    )


def _multiprojective_multiset(base_dim: int, bundles: Sequence[SplitBundle]) -> MultisetOfDims:
    base = projective_space_ring(base_dim)
    ring = multiprojective_ring(base, [(total_chern(b), b.rank) for b in bundles])
    return multiset_from_poincare(poincare_polynomial(ring))


def _check_base(label: str, bundles: Sequence[SplitBundle], base_dim: int):
    for index, bundle in enumerate(bundles, start=1):
        if bundle.base_dim != base_dim:
            raise StructuralError(
                f"{label}_{index} lives on P^{bundle.base_dim}, expected P^{base_dim}."
            )


def decide_mpb_split(
    m: int, Es: Sequence[SplitBundle], n: int, Fs: Sequence[SplitBundle]
) -> Verdict:
    """
    For m != n and bundles of rank at least two, P(E_1, ..., E_r) over P^m is isomorphic to
    P(F_1, ..., F_s) over P^n iff r = s, {m, p_i} = {n, q_j} as multisets, and every bundle is
    trivial up to a line bundle twist.
    """
    if m == n:
        raise HypothesisViolation(f"Both bases are P^{m}; the criterion needs m != n.")
    _check_base("E", Es, m)
    _check_base("F", Fs, n)
    if len(Es) != len(Fs):
        return Verdict(
            decision=Decision.not_iso,
            fidelity=Fidelity.split_exact,
            reason=Reason.factor_count,
            reason_text=f"{len(Es)} factors over P^{m} against {len(Fs)} over P^{n}.",
        )
    dims_E = _multiprojective_multiset(m, Es)
    dims_F = _multiprojective_multiset(n, Fs)
    witnesses = {"multiset_E": list(dims_E.dims), "multiset_F": list(dims_F.dims)}
    if dims_E != dims_F:
        return Verdict(
            decision=Decision.not_iso,
            fidelity=Fidelity.split_exact,
            reason=Reason.multiset_mismatch,
            reason_text=f"The Poincaré polynomials differ: {dims_E} against {dims_F}.",
            witnesses=witnesses,
        )
    for label, bundles in (("E", Es), ("F", Fs)):
        lambdas = []
        for index, bundle in enumerate(bundles, start=1):
            lambda_ = is_constant_twist(bundle)
            if lambda_ is None:
                return Verdict(
                    decision=Decision.not_iso,
                    fidelity=Fidelity.split_exact,
                    reason=Reason.not_twist_trivial,
                    reason_text=(
                        f"{label}_{index} = {_render_split(bundle)} is not trivial up to a line "
                        "bundle twist."
                    ),
                    violated=f"{label}_{index}",
                    witnesses=witnesses,
                )
            lambdas.append(_degree(lambda_))
        witnesses[f"lambdas_{label}"] = lambdas
    return Verdict(
        decision=Decision.iso,
        fidelity=Fidelity.split_exact,
        reason=Reason.criterion_satisfied,
        reason_text=(
            f"r = s = {len(Es)}, the dimension multisets agree ({dims_E}) and every bundle is "
            "trivial up to a line bundle twist."
        ),
        witnesses=witnesses,
    )


def _render_split(bundle: SplitBundle) -> str:
    return " + ".join(f"O({a})" for a in bundle.twists())


@dataclasses.dataclass(frozen=True)
class TowerShape:
    matches: bool
    multiset_E: MultisetOfDims
    multiset_F: MultisetOfDims


def tower_shape_precheck(
    m: int, ranks_E: Sequence[int], n: int, ranks_F: Sequence[int]
) -> TowerShape:
    """
    As graded groups, a tower of projective bundles over P^m is the product of P^m with the
    fibres. Isomorphic towers therefore have equal multisets {m, rk E_1 - 1, rk E_2 - 1, ...}.
    """
    if any(rank < 2 for rank in list(ranks_E) + list(ranks_F)):
        raise ContractError("Every level of a tower needs a bundle of rank at least two.")
    multiset_E = multiset_of_product([m] + [rank - 1 for rank in ranks_E])
    multiset_F = multiset_of_product([n] + [rank - 1 for rank in ranks_F])
    return TowerShape(multiset_E == multiset_F, multiset_E, multiset_F)


def classify_tower3(
    m: int,
    n: int,
    r: int,
    cE1: ChernVector,
    cE2: TotalChernClass,
    cF1: ChernVector,
    cF2: TotalChernClass,
    rank_E2: int | None = None,
    rank_F2: int | None = None,
) -> Verdict:
    """
    Necessary conditions for P(E_2) -> P(E_1) -> P^m to be isomorphic to P(F_2) -> P(F_1) -> P^n,
    where m < n, E_1 and F_1 have rank r+1, E_2 has rank n+1 and F_2 has rank m+1:

    * r not in {m, n}: all four bundles are trivial up to twist;
    * r = m: E_2 and F_1 are trivial up to twist and F_2 is the pullback of E_1 along the second
      projection P(F_1) = P^n x P^m -> P^m, up to twist;
    * r = n: the mirror image of the previous case.
    """
    rank_E2 = n + 1 if rank_E2 is None else rank_E2
    rank_F2 = m + 1 if rank_F2 is None else rank_F2
    if m >= n:
        raise HypothesisViolation(f"The tower classification needs m < n, got m = {m}, n = {n}.")
    if cE1.base_dim != m or cF1.base_dim != n:
        raise HypothesisViolation(
            f"E_1 must live on P^{m} and F_1 on P^{n}, got P^{cE1.base_dim} and P^{cF1.base_dim}."
        )
    if cE1.rank != r + 1 or cF1.rank != r + 1:
        raise HypothesisViolation(
            f"E_1 and F_1 must have rank r+1 = {r + 1}, got {cE1.rank} and {cF1.rank}."
        )
    if rank_E2 != n + 1 or rank_F2 != m + 1:
        raise HypothesisViolation(
            f"E_2 must have rank n+1 = {n + 1} and F_2 rank m+1 = {m + 1}, got {rank_E2} and "
            f"{rank_F2}."
        )
    ring_E1 = projectivize(projective_space_ring(m), cE1.total(), r + 1, "u1")
    ring_F1 = projectivize(projective_space_ring(n), cF1.total(), r + 1, "u1")
    if cE2.owner != ring_E1:
        raise StructuralError(f"c(E_2) does not live in A*(P(E_1)) = {ring_E1}.")
    if cF2.owner != ring_F1:
        raise StructuralError(f"c(F_2) does not live in A*(P(F_1)) = {ring_F1}.")

    shape = tower_shape_precheck(m, [r + 1, rank_E2], n, [r + 1, rank_F2])
    witnesses = {
        "precheck": shape.matches,
        "multiset_E": list(shape.multiset_E.dims),
        "multiset_F": list(shape.multiset_F.dims),
    }
    if r == m:
        case = "(ii)"
    elif r == n:
        case = "(iii)"
    else:
        case = "(i)"
    if not shape.matches:
        return Verdict(
            decision=Decision.ruled_out,
            fidelity=Fidelity.chern_level,
            reason=Reason.multiset_mismatch,
            reason_text=f"{shape.multiset_E} and {shape.multiset_F} differ.",
            case=case,
            violated="dimension multisets agree",
            witnesses=witnesses,
        )

    lambdas: dict[str, RingElement] = {}

    def trivial(label: str, c: TotalChernClass, rank: int) -> Callable[[], RingElement | None]:
        def check():
            lambda_ = is_trivial_up_to_twist(c, rank)
            if lambda_ is not None:
                lambdas[label] = lambda_
            return lambda_

        return check

    def pullback(
        label: str,
        target: TotalChernClass,
        rank: int,
        source: ChernVector,
        ring: GradedRingPresentation,
        base_label: str,
    ) -> Callable[[], RingElement | None]:
        def check():
            # c(G) = (1 + lambda_G)^N: O(1) of the fibre factor of P(G) = P^a x P^b is u - lambda_G
            base_twist = lambdas[base_label].linear_coefficients()[0]
            image = ring.linear([-base_twist, 1])
            lambda_ = is_pullback_twist(target, rank, source, image)
            if lambda_ is not None:
                lambdas[label] = lambda_
            return lambda_

        return check

    cE1_total, cF1_total = cE1.total(), cF1.total()
    if case == "(i)":
        checks = [
            ("E_1 trivial up to twist", Reason.not_twist_trivial, trivial("E_1", cE1_total, r + 1)),
            ("E_2 trivial up to twist", Reason.not_twist_trivial, trivial("E_2", cE2, rank_E2)),
            ("F_1 trivial up to twist", Reason.not_twist_trivial, trivial("F_1", cF1_total, r + 1)),
            ("F_2 trivial up to twist", Reason.not_twist_trivial, trivial("F_2", cF2, rank_F2)),
        ]
    elif case == "(ii)":
        checks = [
            ("E_2 trivial up to twist", Reason.not_twist_trivial, trivial("E_2", cE2, rank_E2)),
            ("F_1 trivial up to twist", Reason.not_twist_trivial, trivial("F_1", cF1_total, r + 1)),
            (
                "F_2 pullback of E_1 up to twist",
                Reason.not_pullback_twist,
                pullback("F_2", cF2, rank_F2, cE1, ring_F1, "F_1"),
            ),
        ]
    else:
        checks = [
            ("F_2 trivial up to twist", Reason.not_twist_trivial, trivial("F_2", cF2, rank_F2)),
            ("E_1 trivial up to twist", Reason.not_twist_trivial, trivial("E_1", cE1_total, r + 1)),
            (
                "E_2 pullback of F_1 up to twist",
                Reason.not_pullback_twist,
                pullback("E_2", cE2, rank_E2, cF1, ring_E1, "E_1"),
            ),
        ]

    for conclusion, reason, check in checks:
        if check() is None:
            witnesses.update({f"lambda_{k}": v.render() for k, v in lambdas.items()})
            return Verdict(
                decision=Decision.ruled_out,
                fidelity=Fidelity.chern_level,
                reason=reason,
                reason_text=f"Case {case} requires '{conclusion}', which fails.",
                case=case,
                violated=conclusion,
                witnesses=witnesses,
            )
    witnesses.update({f"lambda_{k}": v.render() for k, v in lambdas.items()})
    return Verdict(
        decision=Decision.consistent,
        fidelity=Fidelity.chern_level,
        reason=Reason.criterion_satisfied,
        reason_text=f"All Chern-level conclusions of case {case} hold.",
        case=case,
        witnesses=witnesses,
    )


def corollary43_report(E: ChernVector, F: ChernVector) -> Verdict:
    """
    If P(E) = P(F) for E on P^m and F on P^n with m < n, then (i) rk E - 1 = n and rk F - 1 = m,
    (ii) E is trivial up to twist and (iii) F is stably trivial up to twist. At the Chern level
    the last two become c(E (x) L) = 1 and c(F (x) M) = 1.
    """
    m, n = E.base_dim, F.base_dim
    if m >= n:
        raise HypothesisViolation(f"The report needs m < n, got m = {m}, n = {n}.")
    lambda_E = is_trivial_up_to_twist(E.total(), E.rank)
    lambda_F = is_trivial_up_to_twist(F.total(), F.rank)
    conditions = {
        "(i)": E.rank - 1 == n and F.rank - 1 == m,
        "(ii)": lambda_E is not None,
        "(iii)": lambda_F is not None,
    }
    witnesses = {"conditions": conditions}
    if lambda_E is not None:
        witnesses["lambda_E"] = _degree(lambda_E)
    if lambda_F is not None:
        witnesses["lambda_F"] = _degree(lambda_F)
    reasons = {
        "(i)": (Reason.rank, f"rk E - 1 = {E.rank - 1} and rk F - 1 = {F.rank - 1}, not {n}, {m}."),
        "(ii)": (Reason.not_twist_trivial, f"c(E) is not of the form (1 + a*h)^{E.rank}."),
        "(iii)": (Reason.not_twist_trivial, f"c(F) is not of the form (1 + b*h)^{F.rank}."),
    }
    for label, holds in conditions.items():
        if not holds:
            reason, text = reasons[label]
            return Verdict(
                decision=Decision.ruled_out,
                fidelity=Fidelity.chern_level,
                reason=reason,
                reason_text=text,
                violated=label,
                witnesses=witnesses,
            )
    if n <= 3:
        witnesses["small_base_strengthening"] = True
    return Verdict(
        decision=Decision.consistent,
        fidelity=Fidelity.chern_level,
        reason=Reason.criterion_satisfied,
        reason_text="Conditions (i), (ii) and (iii) hold.",
        witnesses=witnesses,
    )
