import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.graded_ring import (
    multiprojective_ring,
    poincare_polynomial,
    projective_space_ring,
    projectivize,
)
from bundles.chern import ChernVector, SplitBundle, TotalChernClass, total_chern, twist
from decide.criteria import (
    classify_tower3,
    corollary43_report,
    decide_mpb_split,
    decide_pb_chow,
    decide_pb_split_same_base,
    declined_verdict,
    tower_shape_precheck,
)
from decide.verdict import Decision, Fidelity, Reason
from errors import ContractError, HypothesisViolation, StructuralError


def split(base_dim: int, *twists: int) -> SplitBundle:
    return SplitBundle.on_projective_space(base_dim, twists)


def test_decide_pb_chow_iso():
    E = ChernVector.from_split(1, [1, 1, 1])
    F = ChernVector.from_split(2, [-1, -1])
    verdict = decide_pb_chow(E, F)
    assert verdict.decision == Decision.iso
    assert verdict.fidelity == Fidelity.chern_level
    assert verdict.reason == Reason.criterion_satisfied
    assert verdict.witnesses == {
        "multiset_E": [1, 2],
        "multiset_F": [1, 2],
        "lambda_E": 1,
        "lambda_F": -1,
        "L": -1,
        "M": 1,
    }
    assert decide_pb_chow(F, E).decision == Decision.iso


def test_decide_pb_chow_on_chern_classes_of_a_non_trivial_bundle():
    # c(O(1) + O(2) + O(3)) = c(O(2)^3) on P^1
    E = ChernVector.from_split(1, [1, 2, 3])
    F = ChernVector(2, 2, ())
    verdict = decide_pb_chow(E, F)
    assert verdict.decision == Decision.iso
    assert verdict.witnesses["lambda_E"] == 2


def test_decide_pb_chow_multiset_mismatch():
    verdict = decide_pb_chow(ChernVector(1, 2, ()), ChernVector(2, 2, ()))
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.multiset_mismatch
    assert verdict.witnesses == {"multiset_E": [1, 1], "multiset_F": [1, 2]}


@pytest.mark.parametrize(
    "E,F,violated",
    [
        (ChernVector(1, 3, (1,)), ChernVector(2, 2, ()), "E"),
        (ChernVector(1, 3, ()), ChernVector(2, 2, (0, 1)), "F"),
        (ChernVector(1, 3, ()), ChernVector.from_split(2, [0, 1]), "F"),
    ],
)
def test_decide_pb_chow_not_twist_trivial(E, F, violated):
    verdict = decide_pb_chow(E, F)
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.not_twist_trivial
    assert verdict.violated == violated


def test_decide_pb_chow_same_base():
    with pytest.raises(HypothesisViolation):
        decide_pb_chow(ChernVector(2, 3, ()), ChernVector(2, 3, ()))


@settings(max_examples=50, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_decide_pb_chow_twist_invariance(a, b):
    F = ChernVector.from_split(2, [b, b])
    assert decide_pb_chow(ChernVector.from_split(1, [a] * 3), F).decision == Decision.iso
    not_trivial = ChernVector.from_split(1, [a, a, a + 1])
    assert decide_pb_chow(not_trivial, F).decision == Decision.not_iso


def test_decide_pb_split_same_base_iso():
    verdict = decide_pb_split_same_base(split(2, 1, 2, 4), split(2, 3, 0, 1))
    assert verdict.decision == Decision.iso
    assert verdict.fidelity == Fidelity.split_exact
    assert verdict.witnesses == {
        "normalized_E": [0, 1, 3],
        "normalized_F": [0, 1, 3],
        "shift": 1,
    }


def test_decide_pb_split_same_base_twist_mismatch():
    verdict = decide_pb_split_same_base(split(2, 0, 1), split(2, 0, 2))
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.twist_mismatch


def test_decide_pb_split_same_base_rank():
    verdict = decide_pb_split_same_base(split(2, 0, 1), split(2, 0, 1, 2))
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.rank


def test_decide_pb_split_same_base_different_bases():
    with pytest.raises(HypothesisViolation):
        decide_pb_split_same_base(split(1, 0, 1), split(2, 0, 1))


same_rank_twists = st.integers(2, 4).flatmap(
    lambda rank: st.tuples(
        st.lists(st.integers(-3, 3), min_size=rank, max_size=rank),
        st.lists(st.integers(-3, 3), min_size=rank, max_size=rank),
    )
)


@settings(max_examples=80, deadline=None)
@given(same_rank_twists, st.integers(-3, 3), st.integers(-3, 3))
def test_decide_pb_split_same_base_twist_invariance(twists, a, b):
    e, f = twists
    verdict = decide_pb_split_same_base(split(2, *e), split(2, *f))
    twisted = decide_pb_split_same_base(
        split(2, *(t + a for t in e)), split(2, *(t + b for t in f))
    )
    assert twisted.decision == verdict.decision
    assert twisted.reason == verdict.reason
    assert twisted.witnesses["normalized_E"] == verdict.witnesses["normalized_E"]
    assert twisted.witnesses["normalized_F"] == verdict.witnesses["normalized_F"]

    shifted = decide_pb_split_same_base(split(2, *e), split(2, *(t + a for t in e)))
    assert shifted.decision == Decision.iso
    assert shifted.witnesses["shift"] == -a


def test_decide_mpb_split_iso():
    verdict = decide_mpb_split(1, [split(1, 1, 1, 1)], 2, [split(2, -1, -1)])
    assert verdict.decision == Decision.iso
    assert verdict.fidelity == Fidelity.split_exact
    assert verdict.witnesses["lambdas_E"] == [1]
    assert verdict.witnesses["lambdas_F"] == [-1]


def test_decide_mpb_split_two_factors_in_any_order():
    Es = [split(1, 0, 0), split(1, 2, 2, 2)]
    Fs = [split(2, 0, 0), split(2, 5, 5)]
    assert decide_mpb_split(1, Es, 2, Fs).decision == Decision.iso
    assert decide_mpb_split(1, Es[::-1], 2, Fs[::-1]).decision == Decision.iso
    assert decide_mpb_split(1, Es, 2, Fs).witnesses["multiset_E"] == [1, 1, 2]


def test_decide_mpb_split_ranks_three_and_three_against_two_and_three():
    Es = [split(1, 0, 0, 0), split(1, 1, 1, 1)]
    Fs = [split(2, 0, 0), split(2, 2, 2, 2)]
    verdict = decide_mpb_split(1, Es, 2, Fs)
    assert verdict.decision == Decision.iso
    assert verdict.witnesses == {
        "multiset_E": [1, 2, 2],
        "multiset_F": [1, 2, 2],
        "lambdas_E": [0, 1],
        "lambdas_F": [0, 2],
    }

    verdict = decide_mpb_split(1, [split(1, 1, 0, 0), Es[1]], 2, Fs)
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.not_twist_trivial
    assert verdict.violated == "E_1"


def test_decide_mpb_split_factor_count():
    verdict = decide_mpb_split(1, [split(1, 0, 0)], 2, [split(2, 0, 0), split(2, 0, 0)])
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.factor_count


def test_decide_mpb_split_multiset_mismatch():
    verdict = decide_mpb_split(1, [split(1, 0, 0)], 2, [split(2, 0, 0)])
    assert verdict.reason == Reason.multiset_mismatch


def test_decide_mpb_split_not_twist_trivial():
    verdict = decide_mpb_split(1, [split(1, 0, 1, 0)], 2, [split(2, 0, 0)])
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.not_twist_trivial
    assert verdict.violated == "E_1"


def test_decide_mpb_split_rank_change():
    verdict = decide_mpb_split(1, [split(1, 1, 1, 1)], 2, [split(2, -1, -1, -1)])
    assert verdict.decision == Decision.not_iso
    assert verdict.reason == Reason.multiset_mismatch
    assert verdict.witnesses["multiset_F"] == [2, 2]


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-2, 2), min_size=2, max_size=3),
    st.lists(st.integers(-2, 2), min_size=2, max_size=2),
    st.integers(-3, 3),
    st.integers(-3, 3),
)
def test_decide_mpb_split_twist_invariance(e, f, a, b):
    verdict = decide_mpb_split(1, [split(1, *e)], 2, [split(2, *f)])
    twisted = decide_mpb_split(
        1, [split(1, *(t + a for t in e))], 2, [split(2, *(t + b for t in f))]
    )
    assert twisted.decision == verdict.decision
    assert twisted.reason == verdict.reason


def multiprojective_poincare(base_dim: int, bundles: list[SplitBundle]):
    ring = multiprojective_ring(
        projective_space_ring(base_dim), [(total_chern(b), b.rank) for b in bundles]
    )
    return poincare_polynomial(ring)


SHAPES = [(2, False), (2, True), (3, False), (3, True)]


def bundle_lists(base_dim: int) -> list[list[SplitBundle]]:
    # (rank, perturbed): a perturbed bundle is O(1) + O + ... + O
    result = []
    for count in (1, 2):
        for shapes in itertools.product(SHAPES, repeat=count):
            result.append(
                [split(base_dim, int(perturbed), *[0] * (rank - 1)) for rank, perturbed in shapes]
            )
    return result


def test_decide_mpb_split_iso_has_equal_poincare_polynomials():
    iso_count = 0
    for Es in bundle_lists(1):
        for Fs in bundle_lists(2):
            if decide_mpb_split(1, Es, 2, Fs).decision == Decision.iso:
                iso_count += 1
                assert multiprojective_poincare(1, Es) == multiprojective_poincare(2, Fs)
    assert iso_count > 0


@pytest.mark.parametrize("a,b", [(0, 0), (1, -1), (-2, 3)])
def test_decide_mpb_split_iso_has_equal_poincare_polynomials_on_known_pairs(a, b):
    Es = [split(1, a, a, a), split(1, b, b, b)]
    Fs = [split(2, b, b), split(2, a, a, a)]
    assert decide_mpb_split(1, Es, 2, Fs).decision == Decision.iso
    assert multiprojective_poincare(1, Es) == multiprojective_poincare(2, Fs)


def test_decide_mpb_split_hypotheses():
    with pytest.raises(HypothesisViolation):
        decide_mpb_split(2, [split(2, 0, 0)], 2, [split(2, 0, 0)])
    with pytest.raises(StructuralError):
        decide_mpb_split(1, [split(2, 0, 0)], 2, [split(2, 0, 0)])


def test_tower_shape_precheck():
    shape = tower_shape_precheck(1, [3, 2], 2, [2, 2])
    assert shape.matches
    assert shape.multiset_E.dims == (1, 1, 2)
    assert not tower_shape_precheck(1, [2], 2, [2]).matches
    with pytest.raises(ContractError):
        tower_shape_precheck(1, [1], 2, [2])


def first_level_ring(c: ChernVector):
    return projectivize(projective_space_ring(c.base_dim), c.total(), c.rank, "u1")


def test_classify_tower3_generic_rank():
    cE1, cF1 = ChernVector(1, 4, ()), ChernVector(2, 4, ())
    ring_E1, ring_F1 = first_level_ring(cE1), first_level_ring(cF1)
    one_E, one_F = TotalChernClass.one(ring_E1), TotalChernClass.one(ring_F1)
    verdict = classify_tower3(1, 2, 3, cE1, one_E, cF1, one_F)
    assert verdict.decision == Decision.consistent
    assert verdict.case == "(i)"
    assert verdict.witnesses["precheck"] is True
    assert verdict.witnesses["lambda_E_2"] == "0"

    not_trivial = TotalChernClass(ring_E1.parse("1 + x"))
    verdict = classify_tower3(1, 2, 3, cE1, not_trivial, cF1, one_F)
    assert verdict.decision == Decision.ruled_out
    assert verdict.reason == Reason.not_twist_trivial
    assert verdict.violated == "E_2 trivial up to twist"


def test_classify_tower3_rank_equal_to_smaller_base():
    cE1 = ChernVector.from_split(1, [0, 1])
    cF1 = ChernVector.from_split(2, [1, 1])
    ring_E1, ring_F1 = first_level_ring(cE1), first_level_ring(cF1)
    assert ring_F1.render() == "Z[x,u1]/(x^3, u1^2 - 2*x*u1 + x^2)"
    # O(1) of the fibre of P(F_1) = P^2 x P^1 is u1 - x
    cF2 = TotalChernClass(ring_F1.parse("1 + u1 - x"))
    verdict = classify_tower3(1, 2, 1, cE1, TotalChernClass.one(ring_E1), cF1, cF2)
    assert verdict.decision == Decision.consistent
    assert verdict.case == "(ii)"
    assert verdict.witnesses["lambda_F_1"] == "x"
    assert verdict.witnesses["lambda_F_2"] == "0"

    verdict = classify_tower3(
        1, 2, 1, cE1, TotalChernClass.one(ring_E1), cF1, TotalChernClass.one(ring_F1)
    )
    assert verdict.decision == Decision.ruled_out
    assert verdict.reason == Reason.not_pullback_twist
    assert verdict.violated == "F_2 pullback of E_1 up to twist"


def test_classify_tower3_rank_equal_to_smaller_base_over_a_trivial_first_level():
    cE1 = ChernVector.from_split(1, [0, 1])
    cF1 = ChernVector(2, 2, ())
    ring_E1, ring_F1 = first_level_ring(cE1), first_level_ring(cF1)
    assert ring_F1.render() == "Z[x,u1]/(x^3, u1^2)"
    cF2 = TotalChernClass(ring_F1.parse("1 + u1"))
    verdict = classify_tower3(1, 2, 1, cE1, TotalChernClass.one(ring_E1), cF1, cF2)
    assert verdict.decision == Decision.consistent
    assert verdict.case == "(ii)"
    assert verdict.witnesses["lambda_E_2"] == "0"
    assert verdict.witnesses["lambda_F_1"] == "0"
    assert verdict.witnesses["lambda_F_2"] == "0"


def test_classify_tower3_rank_equal_to_smaller_base_violations():
    cE1 = ChernVector.from_split(1, [0, 1])
    cF1 = ChernVector.from_split(2, [1, 1])
    ring_E1, ring_F1 = first_level_ring(cE1), first_level_ring(cF1)
    cF2 = TotalChernClass(ring_F1.parse("1 + u1 - x"))
    cE2 = TotalChernClass(ring_E1.parse("1 + x"))
    verdict = classify_tower3(1, 2, 1, cE1, cE2, cF1, cF2)
    assert verdict.decision == Decision.ruled_out
    assert verdict.reason == Reason.not_twist_trivial
    assert verdict.violated == "E_2 trivial up to twist"

    cF1 = ChernVector.from_split(2, [0, 1])
    one_F = TotalChernClass.one(first_level_ring(cF1))
    verdict = classify_tower3(1, 2, 1, cE1, TotalChernClass.one(ring_E1), cF1, one_F)
    assert verdict.decision == Decision.ruled_out
    assert verdict.reason == Reason.not_twist_trivial
    assert verdict.violated == "F_1 trivial up to twist"


@pytest.mark.parametrize("a,b", [(0, 1), (1, 0), (-2, 3), (2, -1)])
def test_classify_tower3_rank_equal_to_smaller_base_is_twist_invariant(a: int, b: int):
    cE1 = ChernVector.from_split(1, [0, 1])
    cF1 = ChernVector.from_split(2, [1, 1])
    ring_E1, ring_F1 = first_level_ring(cE1), first_level_ring(cF1)
    cE2 = twist(TotalChernClass.one(ring_E1), 3, ring_E1.linear([a, b]))
    cF2 = twist(TotalChernClass(ring_F1.parse("1 + u1 - x")), 2, ring_F1.linear([b, a]))
    verdict = classify_tower3(1, 2, 1, cE1, cE2, cF1, cF2)
    assert verdict.decision == Decision.consistent
    assert verdict.witnesses["lambda_F_2"] == ring_F1.linear([b, a]).render()


def test_classify_tower3_rank_equal_to_larger_base():
    cE1 = ChernVector(1, 3, ())
    cF1 = ChernVector(2, 3, (1, 1))
    ring_E1, ring_F1 = first_level_ring(cE1), first_level_ring(cF1)
    cE2 = TotalChernClass(ring_E1.parse("1 + u1 + u1^2"))
    verdict = classify_tower3(1, 2, 2, cE1, cE2, cF1, TotalChernClass.one(ring_F1))
    assert verdict.decision == Decision.consistent
    assert verdict.case == "(iii)"

    verdict = classify_tower3(
        1, 2, 2, cE1, TotalChernClass.one(ring_E1), cF1, TotalChernClass.one(ring_F1)
    )
    assert verdict.decision == Decision.ruled_out
    assert verdict.violated == "E_2 pullback of F_1 up to twist"


def test_classify_tower3_hypotheses():
    cE1, cF1 = ChernVector(1, 4, ()), ChernVector(2, 4, ())
    one_E = TotalChernClass.one(first_level_ring(cE1))
    one_F = TotalChernClass.one(first_level_ring(cF1))
    with pytest.raises(HypothesisViolation):
        classify_tower3(2, 2, 3, ChernVector(2, 4, ()), one_F, cF1, one_F)
    with pytest.raises(HypothesisViolation):
        classify_tower3(1, 2, 3, cE1, one_E, cF1, one_F, rank_E2=2)
    with pytest.raises(HypothesisViolation):
        classify_tower3(1, 2, 2, cE1, one_E, cF1, one_F)
    with pytest.raises(StructuralError):
        classify_tower3(1, 2, 3, cE1, one_F, cF1, one_F)


def test_corollary43_report_consistent():
    verdict = corollary43_report(ChernVector(1, 3, (3,)), ChernVector(2, 2, ()))
    assert verdict.decision == Decision.consistent
    assert verdict.witnesses["conditions"] == {"(i)": True, "(ii)": True, "(iii)": True}
    assert verdict.witnesses["lambda_E"] == 1
    assert verdict.witnesses["small_base_strengthening"] is True


def test_corollary43_report_larger_base():
    verdict = corollary43_report(ChernVector(1, 5, ()), ChernVector(4, 2, ()))
    assert verdict.decision == Decision.consistent
    assert "small_base_strengthening" not in verdict.witnesses


@pytest.mark.parametrize(
    "E,F,violated,reason",
    [
        (ChernVector(1, 2, ()), ChernVector(2, 2, ()), "(i)", Reason.rank),
        (ChernVector(1, 3, (1,)), ChernVector(2, 2, ()), "(ii)", Reason.not_twist_trivial),
        (ChernVector(1, 3, ()), ChernVector(2, 2, (0, 1)), "(iii)", Reason.not_twist_trivial),
    ],
)
def test_corollary43_report_ruled_out(E, F, violated, reason):
    verdict = corollary43_report(E, F)
    assert verdict.decision == Decision.ruled_out
    assert verdict.violated == violated
    assert verdict.reason == reason


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-2, 2), min_size=3, max_size=3),
    st.lists(st.integers(-2, 2), min_size=2, max_size=2),
    st.integers(-3, 3),
    st.integers(-3, 3),
)
def test_corollary43_report_twist_invariance(e, f, a, b):
    verdict = corollary43_report(ChernVector.from_split(1, e), ChernVector.from_split(2, f))
    twisted = corollary43_report(
        ChernVector.from_split(1, [t + a for t in e]), ChernVector.from_split(2, [t + b for t in f])
    )
    assert twisted.decision == verdict.decision
    assert twisted.violated == verdict.violated
    assert twisted.witnesses["conditions"] == verdict.witnesses["conditions"]
    if "lambda_E" in verdict.witnesses:
        assert twisted.witnesses["lambda_E"] == verdict.witnesses["lambda_E"] + a


def test_corollary43_report_hypotheses():
    with pytest.raises(HypothesisViolation):
        corollary43_report(ChernVector(2, 2, ()), ChernVector(1, 3, ()))


def test_declined_verdict():
    verdict = declined_verdict(HypothesisViolation("m = n"), Fidelity.split_exact)
    assert verdict.decision == Decision.declined
    assert verdict.reason == Reason.hypothesis_violation
    assert verdict.reason_text == "m = n"
