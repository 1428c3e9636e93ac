import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from conftest import brute_berc, brute_stpc, param_vectors, rationals
from kanterbound import (
    LatticePMF,
    ModeError,
    ParamVector,
    argmax_intervals,
    ber,
    berc,
    beta_of_alpha,
    binom,
    convolve,
    delta,
    expectation,
    interval_prob,
    max_interval_prob,
    mixture,
    poisson_truncated,
    psi,
    radc,
    reflect,
    stp,
    stpc,
    sympois_truncated,
    tv_distance,
)


def as_dict(P):
    return dict(P.items())


class TestLatticePMF:
    def test_trims_zero_tails(self):
        P = LatticePMF(-2, (F(0), F(1, 2), F(0), F(1, 2), F(0)))
        assert P.offset == -1 and P.weights == (F(1, 2), F(0), F(1, 2))

    @pytest.mark.parametrize(
        "offset,weights",
        [(0, ()), (0, (F(1, 2),)), (0, (F(3, 2), F(-1, 2))), (0, (F(0),))],
    )
    def test_rejects_invalid(self, offset, weights):
        with pytest.raises(ValueError):
            LatticePMF(offset, weights)

    def test_float_sum_tolerance(self):
        LatticePMF(0, (0.5, 0.5 + 5e-13))
        with pytest.raises(ValueError):
            LatticePMF(0, (0.5, 0.5 + 1e-9))

    def test_mixed_modes_rejected(self):
        with pytest.raises((ModeError, TypeError, ValueError)):
            LatticePMF(0, (F(1, 2), 0.5))

    def test_structural_equality(self):
        assert stp(F(1, 2)) == LatticePMF(-1, (F(1, 4), F(1, 2), F(1, 4)))
        assert stp(F(1, 2)) != stp(F(1, 3))

    def test_json_round_trip_exact(self):
        P = stpc([F(1, 3), F(2, 5)])
        text = P.to_json()
        assert '"1/' in text or "/" in text
        assert LatticePMF.from_json(text) == P

    def test_json_round_trip_float_with_tail(self):
        S = sympois_truncated(1.5, 1e-10)
        back = LatticePMF.from_json(S.to_json())
        assert back == S and back.tail_mass == S.tail_mass

    def test_json_format(self):
        d = radc(2).to_dict()
        assert d["offset"] == -2 and d["mode"] == "exact"
        assert d["weights"] == ["1/4", "0/1", "1/2", "0/1", "1/4"]

    def test_getitem_outside_support(self):
        assert stp(F(1, 2))[5] == 0


class TestParamVector:
    def test_derived(self):
        p = ParamVector.of([F(1, 2), F(1, 4)])
        assert p.total == F(3, 4) and p.mean == F(3, 8) and p.max == F(1, 2) and p.n == 2

    def test_empty_is_legal(self):
        p = ParamVector.of([])
        assert p.n == 0 and p.total == 0
        assert stpc(p) == delta(0)

    @pytest.mark.parametrize("bad", [[F(3, 2)], [F(-1, 3)], [1.5]])
    def test_entries_in_unit_interval(self, bad):
        with pytest.raises(ValueError):
            ParamVector.of(bad)


class TestFamilies:
    def test_ber(self):
        assert ber(0) == delta(0)
        assert ber(1) == delta(1)
        assert as_dict(ber(F(1, 3))) == {0: F(2, 3), 1: F(1, 3)}

    def test_stp(self):
        assert stp(0) == delta(0)
        assert as_dict(stp(1)) == {-1: F(1, 2), 1: F(1, 2)}
        assert as_dict(stp(F(1, 2))) == {-1: F(1, 4), 0: F(1, 2), 1: F(1, 4)}

    @pytest.mark.parametrize("fn", [ber, stp])
    @pytest.mark.parametrize("a", [F(-1, 10), F(11, 10), 1.5])
    def test_domain(self, fn, a):
        with pytest.raises(ValueError):
            fn(a)

    def test_convolve_examples(self):
        Q = stp(F(1, 3))
        assert convolve(delta(0), Q) == Q
        assert as_dict(convolve(stp(1), stp(1))) == {-2: F(1, 4), 0: F(1, 2), 2: F(1, 4)}
        assert as_dict(convolve(ber(F(1, 2)), ber(F(1, 2)))) == {0: F(1, 4), 1: F(1, 2), 2: F(1, 4)}

    def test_convolve_mode_mismatch(self):
        with pytest.raises(ModeError):
            convolve(stp(F(1, 2)), stp(0.5))

    def test_radc(self):
        assert as_dict(radc(2)) == {-2: F(1, 4), 0: F(1, 2), 2: F(1, 4)}
        assert radc(0) == delta(0)
        for n in range(8):
            assert as_dict(radc(n)) == {2 * j - n: F(math.comb(n, j), 2**n) for j in range(n + 1)}
            assert stpc([1] * n) == radc(n)

    def test_binom(self):
        P = binom(4, F(1, 3))
        assert as_dict(P) == {k: F(math.comb(4, k)) * F(1, 3) ** k * F(2, 3) ** (4 - k) for k in range(5)}
        assert binom(3, 0) == delta(0)

    @given(param_vectors(max_n=5))
    def test_stpc_matches_enumeration(self, p):
        assert as_dict(stpc(p)) == brute_stpc(p)

    @given(param_vectors(max_n=6))
    def test_berc_matches_enumeration(self, p):
        B = berc(p)
        assert as_dict(B) == brute_berc(p)
        assert sum(B.weights) == 1

    @given(param_vectors(max_n=6), st.randoms())
    def test_stpc_symmetric_and_permutation_invariant(self, p, r):
        P = stpc(p)
        assert reflect(P) == P
        q = list(p)
        r.shuffle(q)
        assert stpc(q) == P

    @given(st.lists(rationals(6), min_size=1, max_size=5))
    def test_float_mode_tracks_exact(self, p):
        exact = stpc(p)
        approx = stpc([float(a) for a in p])
        assert approx.mode == "float"
        assert float(tv_distance(exact.as_float(), approx)) < 1e-14

    def test_large_exact_convolution(self):
        P = stpc([F(1, 80)] * 160)
        assert sum(P.weights) == 1 and reflect(P) == P


def small_pmfs():
    return st.integers(-4, 4).flatmap(
        lambda off: st.lists(st.integers(0, 5), min_size=1, max_size=9)
        .filter(lambda ws: ws[0] > 0 and ws[-1] > 0)
        .map(lambda ws: LatticePMF(off, tuple(F(w, sum(ws)) for w in ws)))
    )


@given(small_pmfs(), small_pmfs(), small_pmfs())
def test_convolution_commutative_associative(P, Q, R):
    assert convolve(P, Q) == convolve(Q, P)
    assert convolve(convolve(P, Q), R) == convolve(P, convolve(Q, R))


class TestSympois:
    def test_zero(self):
        assert sympois_truncated(0) == delta(0, "float")

    def test_center_weight(self):
        S = sympois_truncated(1.0)
        assert S[0] == pytest.approx(float(mpmath.exp(-1) * mpmath.besseli(0, 1)), abs=1e-15)

    @pytest.mark.parametrize("lam", [0.3, 2.0, 7.5, 40.0])
    def test_symmetry_and_tail(self, lam):
        S = sympois_truncated(lam, 1e-13)
        for k in S.support:
            assert S[k] == S[-k]
        assert 0 < S.tail_mass < 1e-13
        assert abs(math.fsum(S.weights) + S.tail_mass - 1) < 1e-13

    @pytest.mark.parametrize("lam", [0.5, 3.0, 25.0])
    def test_weights_against_mpmath(self, lam):
        S = sympois_truncated(lam, 1e-12)
        for k in range(0, S.max + 1, max(1, S.max // 6)):
            ref = float(mpmath.exp(-lam) * mpmath.besseli(k, lam))
            assert S[k] == pytest.approx(ref, rel=1e-11, abs=1e-16)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            sympois_truncated(-1.0)

    def test_poisson_truncated(self):
        P = poisson_truncated(2.0, 1e-14)
        assert P[3] == pytest.approx(math.exp(-2) * 8 / 6, rel=1e-14)
        assert 0 < P.tail_mass < 1e-14


class TestOperations:
    def test_reflect(self):
        assert reflect(delta(1)) == delta(-1)
        assert reflect(stp(F(2, 7))) == stp(F(2, 7))
        assert as_dict(reflect(ber(F(1, 3)))) == {-1: F(1, 3), 0: F(2, 3)}

    def test_interval_prob(self):
        assert interval_prob(radc(2), 0, 2) == F(1, 2)
        assert interval_prob(delta(0), 5, 3) == 0
        P = stpc([F(1, 2), F(1, 3)])
        assert interval_prob(P, P.min, P.max - P.min + 1) == 1
        with pytest.raises(ValueError):
            interval_prob(P, 0, 0)

    def test_max_interval_prob(self):
        assert max_interval_prob(delta(0), 1) == (0, 1)
        k, v = max_interval_prob(stpc([F(1, 2), F(1, 3), F(3, 4)]), 2)
        assert k == -1
        assert argmax_intervals(stpc([F(1, 2), F(1, 3), F(3, 4)]), 2) == [-1, 0]

    def test_max_interval_prob_odd_rademacher_ties(self):
        # radc(3) = {-3: 1/8, -1: 3/8, 1: 3/8, 3: 1/8}: every window {k, k+1} holds one atom,
        # so four windows tie at 3/8 and the smallest k is -2
        assert max_interval_prob(radc(3), 2) == (-2, F(3, 8))
        assert argmax_intervals(radc(3), 2) == [-2, -1, 0, 1]

    @given(st.lists(rationals(10).filter(lambda a: 0 < a < 1), min_size=1, max_size=6))
    def test_two_point_peak_at_center(self, p):
        k, v = max_interval_prob(stpc(p), 2)
        assert k == -1
        assert argmax_intervals(stpc(p), 2) == [-1, 0]
        assert v == interval_prob(stpc(p), 0, 2)

    def test_tv_distance(self):
        P = stp(F(1, 3))
        assert tv_distance(P, P) == 0
        assert tv_distance(delta(0), delta(1)) == 1
        assert tv_distance(ber(F(1, 2)), delta(0)) == F(1, 2)
        with pytest.raises(ModeError):
            tv_distance(delta(0), delta(0, "float"))

    def test_expectation(self):
        assert expectation(delta(3), lambda k: k * k + 1) == 10
        assert expectation(radc(2), lambda k: k * k) == 2

    @given(param_vectors(max_n=6))
    def test_berc_psi_is_stpc_center(self, p):
        assert expectation(berc(p), psi) == interval_prob(stpc(p), 0, 2)

    def test_psi(self):
        assert [psi(m) for m in range(5)] == [1, F(1, 2), F(1, 2), F(3, 8), F(3, 8)]
        for m in range(13):
            assert psi(m) == interval_prob(radc(m), 0, 2)
        with pytest.raises(ValueError):
            psi(-1)

    def test_beta_of_alpha(self):
        assert beta_of_alpha(0) == 0
        assert beta_of_alpha(F(1, 2)) == 0.5
        assert beta_of_alpha(F(3, 8)) == pytest.approx(0.25, abs=1e-16)
        with pytest.raises(ValueError):
            beta_of_alpha(0.6)

    def test_mixture(self):
        M = mixture([F(1, 2), F(1, 2)], [delta(0), delta(2)])
        assert as_dict(M) == {0: F(1, 2), 2: F(1, 2)}


@given(param_vectors(max_n=8, max_den=6))
def test_mixture_of_rademacher_convolutions(p):
    B = berc(p)
    rhs = mixture([B[m] for m in range(len(p) + 1)], [radc(m) for m in range(len(p) + 1)])
    assert stpc(p) == rhs


@given(st.lists(st.floats(0, 0.5), max_size=6))
def test_symmetrized_bernoulli(p):
    b = [beta_of_alpha(a) for a in p]
    B = berc(b) if b else delta(0, "float")
    lhs = stpc(p) if p else delta(0, "float")
    assert tv_distance(lhs, convolve(B, reflect(B))) <= 1e-12


@given(st.lists(rationals(9).filter(lambda a: a <= F(2, 3)), max_size=6))
def test_unimodal_for_small_parameters(p):
    P = stpc(p)
    for k in range(0, P.max + 1):
        assert P[k] >= P[k + 1]
