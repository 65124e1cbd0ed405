import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellpoly import (
    CapacityError,
    CorrelationVector,
    KolmogorovRep,
    NoRepresentationError,
    ShapeError,
    bell3_vector,
    bell_inequality_set_n3,
    ch_inequality_set,
    ch_shape_vector,
    enumerate_vertices,
    membership,
    product_representation,
    verify_representation,
)
from bellpoly.models import (
    distinguish_events,
    singlet_scenario,
    maximal_violation_config,
    vessels_scenario,
)
from bellpoly.pitowsky import pair_atom_weights

HALF = Fraction(1, 2)


class TestEnumerateVertices:
    def test_two_events(self):
        vs = enumerate_vertices(2, ((1, 2),))
        assert vs.vertices.tolist() == [[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 1]]

    def test_three_events_row(self):
        vs = enumerate_vertices(3, ((1, 2), (1, 3), (2, 3)))
        # eps = (1, 1, 0) sits at lexicographic position 6
        assert vs.vertices[6].tolist() == [1, 1, 0, 1, 0, 0]

    def test_ch_shape_count(self):
        vs = enumerate_vertices(4, ((1, 3), (1, 4), (2, 3), (2, 4)))
        assert vs.vertices.shape == (16, 8)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_product_identity_all_pairs(self, n):
        pairs = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        vs = enumerate_vertices(n, pairs)
        assert len(vs) == 2 ** n
        eps = vs.vertices[:, :n]
        for k, (i, j) in enumerate(vs.pairs):
            assert np.array_equal(vs.vertices[:, n + k], eps[:, i - 1] * eps[:, j - 1])

    def test_guard(self):
        with pytest.raises(CapacityError):
            enumerate_vertices(17, ())
        enumerate_vertices(17, (), max_n=18)
        with pytest.raises(CapacityError):
            enumerate_vertices(21, (), max_n=25)


def product_vector_ch(rng):
    p = rng.random(4)
    return ch_shape_vector(
        *p, p[0] * p[2], p[0] * p[3], p[1] * p[2], p[1] * p[3]
    )


class TestMembership:
    def test_distinguished_vessels_inside(self):
        v = distinguish_events(vessels_scenario())
        result = membership(v)
        assert result.inside and result.mode == "exact"
        assert result.reconstruction_error(v) == 0
        weights = result.certificate
        assert sum(weights) == 1 and min(weights) >= 0

    def test_raw_vessels_outside_with_ch_facet(self):
        result = membership(vessels_scenario().vector)
        assert not result.inside
        assert result.violated_facet.name == "CH2"
        assert result.violated_facet.value == 1

    def test_product_vectors_inside(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            result = membership(product_vector_ch(rng), mode="float")
            assert result.inside

    def test_singlet_max_violation_outside_both_routes(self):
        v = singlet_scenario(maximal_violation_config()).vector
        result = membership(v)
        assert not result.inside
        facet = result.violated_facet
        assert facet.name == "CH4"
        # 3*(1/2)sin^2(22.5deg) - (1/2)sin^2(67.5deg) - 1 = -1/2 - sqrt(2)/2
        assert facet.value == pytest.approx(-0.5 - math.sqrt(2) / 2, abs=1e-9)
        # the printed list and the LP must agree
        assert any(not r.satisfied for r in ch_inequality_set(v))

    def test_float_mode_certificate_reconstruction(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            v = product_vector_ch(rng)
            result = membership(v, mode="float")
            assert result.inside
            assert result.reconstruction_error(v) <= 1e-9

    def test_exact_mode_certificate_is_exact(self):
        v = ch_shape_vector(
            HALF, HALF, HALF, HALF,
            Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4),
        )
        result = membership(v, mode="exact")
        assert result.inside
        assert result.reconstruction_error(v) == 0
        assert all(isinstance(w, Fraction) for w in result.certificate)

    def test_default_mode_switches_on_size(self):
        v = CorrelationVector(11, (), {i: 0.5 for i in range(1, 12)}, {})
        assert membership(v).mode == "float"

    def test_unknown_shape_reports_no_facet(self):
        v = CorrelationVector(2, ((1, 2),), {1: 1, 2: 0}, {(1, 2): 1})
        result = membership(v)
        assert not result.inside and result.violated_facet is None

    def test_capacity_guard(self):
        v = CorrelationVector(17, (), {i: 0.5 for i in range(1, 18)}, {})
        with pytest.raises(CapacityError):
            membership(v)

    def test_product_vector_inside_at_n12(self):
        rng = np.random.default_rng(41)
        n = 12
        pairs = tuple((i, i + 6) for i in range(1, 7))
        p = rng.random(n)
        v = CorrelationVector(
            n, pairs,
            {i + 1: float(p[i]) for i in range(n)},
            {(i, j): float(p[i - 1] * p[j - 1]) for i, j in pairs},
        )
        result = membership(v)
        assert result.mode == "float" and result.inside
        assert result.reconstruction_error(v) <= 1e-9

    def test_certificate_support_is_basic(self):
        # a basic feasible solution has at most (rows) positive weights
        rng = np.random.default_rng(12)
        for _ in range(10):
            v = product_vector_ch(rng)
            result = membership(v, mode="float")
            support = sum(1 for w in result.certificate if w > 1e-12)
            assert support <= v.n + len(v.pairs) + 1

    def test_agreement_with_inequality_list_n4(self):
        rng = np.random.default_rng(2024)
        for _ in range(300):
            v = ch_shape_vector(*rng.random(8))
            inside = membership(v, mode="float").inside
            assert inside == all(r.satisfied for r in ch_inequality_set(v))

    def test_agreement_with_inequality_list_n3(self):
        rng = np.random.default_rng(2025)
        for _ in range(300):
            v = bell3_vector(*rng.random(6))
            inside = membership(v, mode="float").inside
            assert inside == all(r.satisfied for r in bell_inequality_set_n3(v))

    def test_float_and_exact_agree_away_from_facets(self):
        rng = np.random.default_rng(99)
        checked = 0
        for _ in range(120):
            v = ch_shape_vector(*rng.random(8))
            distance = min(
                _facet_distance(r) for r in ch_inequality_set(v)
            )
            if distance <= 1e-6:
                continue
            checked += 1
            assert membership(v, mode="float").inside == membership(v, mode="exact").inside
        assert checked > 100

    def test_float_and_exact_agree_n3(self):
        rng = np.random.default_rng(98)
        checked = 0
        for _ in range(120):
            v = bell3_vector(*rng.random(6))
            distance = min(
                _facet_distance(r) for r in bell_inequality_set_n3(v)
            )
            if distance <= 1e-6:
                continue
            checked += 1
            assert membership(v, mode="float").inside == membership(v, mode="exact").inside
        assert checked > 100


def _facet_distance(result):
    # geometric distance needs the coefficient norm; every inequality here
    # has at most six unit coefficients, so norm <= sqrt(6)
    slack = math.inf
    if result.lower is not None:
        slack = min(slack, abs(float(result.value - result.lower)))
    if result.upper is not None:
        slack = min(slack, abs(float(result.value - result.upper)))
    return slack / math.sqrt(6)


class TestChInequalitySet:
    def test_vessels(self):
        results = {r.name: r for r in ch_inequality_set(vessels_scenario().vector)}
        ch2 = results["CH2"]
        assert ch2.value == 1 and not ch2.satisfied
        assert not results["p1+p3-p13<=1"].satisfied

    def test_zero_vector(self):
        results = ch_inequality_set(ch_shape_vector(0, 0, 0, 0, 0, 0, 0, 0))
        assert all(r.satisfied for r in results)
        assert all(r.value == 0 for r in results if r.facet)

    def test_ch_violation_configuration(self):
        v = ch_shape_vector(
            HALF, HALF, HALF, HALF,
            Fraction(3, 8), Fraction(3, 8), 0, Fraction(3, 8),
        )
        results = {r.name: r for r in ch_inequality_set(v)}
        assert results["CH1"].value == Fraction(1, 8)
        assert not results["CH1"].satisfied
        assert all(r.satisfied for name, r in results.items() if name != "CH1")

    def test_wrong_shape(self):
        with pytest.raises(ShapeError):
            ch_inequality_set(bell3_vector(1, 1, 1, 1, 1, 1))


class TestBellInequalitySetN3:
    def test_independent_fair_events(self):
        v = bell3_vector(HALF, HALF, HALF, *(Fraction(1, 4),) * 3)
        assert all(r.satisfied for r in bell_inequality_set_n3(v))

    def test_anticorrelated_triple_violates_sum(self):
        v = bell3_vector(HALF, HALF, HALF, 0, 0, 0)
        results = {r.name: r for r in bell_inequality_set_n3(v)}
        b1 = results["B1:p1+p2+p3-p12-p13-p23<=1"]
        assert b1.value == Fraction(3, 2) and not b1.satisfied
        assert not membership(v).inside  # no 8-atom space realizes it

    def test_certain_singles_with_conflicting_joints(self):
        v = bell3_vector(1, 1, 1, 0, 0, 1)
        results = {r.name: r for r in bell_inequality_set_n3(v)}
        assert results["B2:p1-p12-p13+p23>=0"].value == 2
        assert not results["p1+p2-p12<=1"].satisfied
        assert not membership(v).inside

    def test_cyclic_facets_hold_on_vertices(self):
        vs = enumerate_vertices(3, ((1, 2), (1, 3), (2, 3)))
        for row in vs.vertices.tolist():
            v = bell3_vector(*row)
            assert all(r.satisfied for r in bell_inequality_set_n3(v))

    def test_wrong_shape(self):
        with pytest.raises(ShapeError):
            bell_inequality_set_n3(vessels_scenario().vector)


class TestProductRepresentation:
    def test_pair_atom_weights_fair(self):
        assert pair_atom_weights(HALF, HALF, Fraction(1, 4)) == (
            Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)
        )

    def test_pair_atom_weights_empty_pair(self):
        assert pair_atom_weights(0, 0, 0) == (0, 0, 0, 1)

    def test_joint_above_marginal_rejected(self):
        with pytest.raises(NoRepresentationError):
            pair_atom_weights(Fraction(1, 4), HALF, Fraction(1, 2))

    def test_distinguished_vessels(self):
        v = distinguish_events(vessels_scenario())
        rep = product_representation(v)
        assert verify_representation(rep, v)
        assert rep.measure(1) == 0 and rep.measure(1, 5) == 0
        assert rep.measure(2, 7) == Fraction(1, 4)

    def test_single_pair_with_spectators(self):
        v = CorrelationVector(
            3, ((1, 2),),
            {1: HALF, 2: HALF, 3: Fraction(1, 3)},
            {(1, 2): Fraction(1, 4)},
        )
        rep = product_representation(v)
        assert verify_representation(rep, v)
        assert len(rep.atoms) == 8  # 4-atom pair factor x 2-atom spectator

    def test_overlapping_pairs_rejected(self):
        v = CorrelationVector(
            3, ((1, 2), (1, 3)),
            {1: HALF, 2: HALF, 3: HALF},
            {(1, 2): Fraction(1, 4), (1, 3): Fraction(1, 4)},
        )
        with pytest.raises(ShapeError):
            product_representation(v)

    def test_unrepresentable_pair_rejected(self):
        v = CorrelationVector(
            2, ((1, 2),), {1: Fraction(1, 4), 2: HALF}, {(1, 2): HALF}
        )
        with pytest.raises(NoRepresentationError):
            product_representation(v)

    def test_float_roundoff_at_marginal_boundary(self):
        # p_ij exceeds p_i by float noise within tolerance: still representable
        v = CorrelationVector(
            2, ((1, 2),), {1: 0.1 + 2e-10, 2: 0.3}, {(1, 2): 0.1 + 3e-10}
        )
        rep = product_representation(v)
        assert verify_representation(rep, v)
        assert min(w for _, w in rep.atoms) >= 0.0

    def test_float_roundoff_on_spectator(self):
        v = CorrelationVector(1, (), {1: 1.0 + 5e-10}, {})
        assert verify_representation(product_representation(v), v)


@st.composite
def disjoint_pair_vectors(draw):
    denom = 64
    frac = lambda k: Fraction(k, denom)
    singles = {}
    joints = {}
    for i, j in ((1, 4), (2, 5)):
        pij = draw(st.integers(0, denom))
        pi = draw(st.integers(pij, denom))
        pj = draw(st.integers(pij, denom - pi + pij))
        singles[i], singles[j] = frac(pi), frac(pj)
        joints[(i, j)] = frac(pij)
    singles[3] = frac(draw(st.integers(0, denom)))
    singles[6] = frac(draw(st.integers(0, denom)))
    return CorrelationVector(6, ((1, 4), (2, 5)), singles, joints)


class TestRepresentationProperties:
    @settings(max_examples=60, deadline=None)
    @given(disjoint_pair_vectors())
    def test_product_representation_always_verifies(self, v):
        rep = product_representation(v)
        assert verify_representation(rep, v, tol=0)

    def test_perturbed_rep_fails(self):
        v = CorrelationVector(
            2, ((1, 2),), {1: HALF, 2: HALF}, {(1, 2): Fraction(1, 4)}
        )
        rep = product_representation(v)
        # move 0.1 of mass from the both-up atom to the neither atom
        shifted = {
            label: weight for label, weight in rep.atoms
        }
        shifted["11"] = shifted["11"] - Fraction(1, 10)
        shifted["00"] = shifted["00"] + Fraction(1, 10)
        rep2 = KolmogorovRep(tuple(shifted.items()), rep.events)
        assert not verify_representation(rep2, v)

    def test_hand_built_four_atom_space(self):
        rep = KolmogorovRep(
            (("a", Fraction(1, 4)), ("b", Fraction(1, 4)),
             ("c", Fraction(1, 4)), ("d", Fraction(1, 4))),
            {1: frozenset("ab"), 2: frozenset("ac")},
        )
        v = CorrelationVector(
            2, ((1, 2),), {1: HALF, 2: HALF}, {(1, 2): Fraction(1, 4)}
        )
        assert verify_representation(rep, v, tol=0)

    def test_missing_event_declaration(self):
        rep = KolmogorovRep((("a", 1),), {1: frozenset("a")})
        v = CorrelationVector(2, (), {1: 1, 2: 1}, {})
        with pytest.raises(ShapeError):
            verify_representation(rep, v)


class TestKolmogorovRepValidation:
    def test_negative_weight(self):
        with pytest.raises(ValueError):
            KolmogorovRep((("a", -0.5), ("b", 1.5)), {})

    def test_bad_sum(self):
        with pytest.raises(ValueError):
            KolmogorovRep((("a", Fraction(1, 2)),), {})

    def test_unknown_atom_in_event(self):
        with pytest.raises(ValueError):
            KolmogorovRep((("a", 1),), {1: frozenset("b")})

    def test_duplicate_label(self):
        with pytest.raises(ValueError):
            KolmogorovRep((("a", HALF), ("a", HALF)), {})
