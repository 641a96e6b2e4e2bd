import math
import random

import numpy as np
import pytest
from conftest import ideal
from hypothesis import given, settings
from hypothesis import strategies as st

from regstab.algebra import FieldSpec, IdealSpec, Polynomial, count_monomials, ideal_from_monomials
from regstab.groebner import groebner, is_m_primary
from regstab.instances import random_mprimary
from regstab.linalg import mat_mul
from regstab.report import AtLeast
from regstab.stabilization import n_strand_dimensions, stabilization_report
from regstab.strands import (
    CutoffTooLarge,
    FieldTooSmall,
    build_strand,
    free_module,
    growth_degree,
    h0_end,
    h1_end,
    ideal_module,
    koszul_betti,
    koszul_betti_sequence,
    krull_dimension,
    residue_field,
    sample_general_reduction,
    verify_compcoh,
    verify_simple_stab,
)

NEG = float("-inf")
F = FieldSpec.prime()


def T_ideal(*gens, m=2):
    names = tuple(f"T{i + 1}" for i in range(m))
    return ideal(*gens, names=names)


# --------------------------------------------------------------------------
# reductions


def test_reduction_of_ci22(ci22):
    J = sample_general_reduction(ci22, 2, seed=5)
    (a, b), (c, e) = [[g.terms.get((2, 0), 0), g.terms.get((0, 2), 0)] for g in J.gens]
    assert all(set(g.terms) <= {(2, 0), (0, 2)} for g in J.gens)
    assert (a * e - b * c) % F.p != 0
    assert is_m_primary(groebner(ci22.with_generators(J.gens)))


def test_reduction_is_deterministic(ci22):
    assert sample_general_reduction(ci22, 2, 9) == sample_general_reduction(ci22, 2, 9)
    assert sample_general_reduction(ci22, 2, 9) != sample_general_reduction(ci22, 2, 10)


def test_reduction_small_field_error_path():
    F2 = FieldSpec.prime(2)
    I = ideal_from_monomials([(2, 0), (0, 2)], F2)
    outcomes = []
    for seed in range(40):
        try:
            sample_general_reduction(I, 2, seed, max_attempts=1)
            outcomes.append(True)
        except FieldTooSmall as exc:
            assert "larger prime" in str(exc)
            outcomes.append(False)
    assert not all(outcomes)


def test_reduction_lies_in_I_d():
    I = ideal("x^3", "y^3", "x^2*y^2", "x*y*(x+y)")
    J = sample_general_reduction(I, 3, 1)
    from regstab.groebner import normal_form

    G = groebner(I)
    assert all(g.degree == 3 and normal_form(g, G).is_zero() for g in J.gens)


# --------------------------------------------------------------------------
# strands


def test_strand_dims_examples(ci22, m2):
    J = sample_general_reduction(ci22, 2, 0)
    R = build_strand(ci22, J, 1, 4, "rees")
    assert R.dims[:2] == [2, 4]
    N = build_strand(ci22, J, 0, 4, "quotient")
    assert N.dims[1:4] == [1, 2, 3]
    Jm = sample_general_reduction(m2, 1, 0)
    Rm = build_strand(m2, Jm, 0, 4, "rees")
    assert Rm.dims == [count_monomials(2, t) for t in range(5)]


def test_strand_mu_range(ci22):
    J = sample_general_reduction(ci22, 2, 0)
    with pytest.raises(ValueError, match="mu"):
        build_strand(ci22, J, -2, 4)
    build_strand(ci22, J, -1, 4)


@given(st.integers(0, 10_000))
@settings(max_examples=15)
def test_maps_commute_and_rank_nullity(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 2, 3))
    I = random_mprimary(rng, n, 3)
    rep = stabilization_report(I)
    J = sample_general_reduction(I, rep.d, seed)
    mu = rng.randint(-n + 1, rep.b + 1)
    T = 5
    for kind in ("rees", "quotient"):
        M = build_strand(I, J, mu, T, kind)
        for t in range(T - 1):
            A, B = M.maps(t), M.maps(t + 1)
            for i in range(n):
                for j in range(i + 1, n):
                    assert np.array_equal(mat_mul(B[j], A[i], F), mat_mul(B[i], A[j], F))
    R = build_strand(I, J, mu, T, "rees")
    N = build_strand(I, J, mu, T, "quotient")
    for t in range(1, T + 1):
        assert R.dim(t) == count_monomials(n, mu + t * rep.d) - N.dim(t)
    if mu >= 0:
        assert N.dims[1:] == n_strand_dimensions(I, mu, T, rep.d)


# --------------------------------------------------------------------------
# Koszul homology


def test_free_module_betti():
    for m in (2, 3):
        bt = koszul_betti(free_module(m, 8), 8 - m)
        assert bt.nonzero() == [(0, 0, 1)]
        assert bt.reg_B == 0 and bt.certified


def test_residue_field_betti():
    for m in (2, 3):
        bt = koszul_betti(residue_field(m, 10), 10 - m)
        assert bt.nonzero() == [(j, j, math.comb(m, j)) for j in range(m + 1)]
        assert bt.reg_B == 0


def test_m_strand_is_free(m2):
    J = sample_general_reduction(m2, 1, 3)
    bt = koszul_betti(build_strand(m2, J, 0, 8), 6)
    assert bt.nonzero() == [(0, 0, 1)] and bt.reg_B == 0


def test_ideal_of_variables_betti():
    # (T1, T2): generated by 2 in degree 1, one relation in degree 2
    bt = koszul_betti(ideal_module(T_ideal("T1", "T2"), 8), 6)
    assert bt.nonzero() == [(0, 1, 2), (1, 2, 1)]
    assert bt.reg_B == 1


def test_cutoff_too_large(ci22):
    with pytest.raises(CutoffTooLarge) as exc:
        koszul_betti(free_module(2, 5), 4)
    assert exc.value.needed == 6


@given(st.integers(0, 10_000))
@settings(max_examples=12)
def test_free_strand_has_no_higher_koszul_homology(seed):
    # the mu = 0 Rees strand of a power of m over general linear forms is B-free
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    I = IdealSpec(F, ("x", "y", "z")[:n], tuple(Polynomial.variable(F, n, i) for i in range(n)))
    J = sample_general_reduction(I, 1, seed)
    bt = koszul_betti(build_strand(I, J, 0, 6 + n), 6)
    assert all(v == 0 for j, row in enumerate(bt.beta) if j for v in row)


@given(st.integers(0, 10_000))
@settings(max_examples=15)
def test_direct_and_sequence_routes_agree(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 2, 3))
    I = random_mprimary(rng, n, 3)
    rep = stabilization_report(I)
    J = sample_general_reduction(I, rep.d, seed)
    for mu in range(-n + 1, rep.d):
        M = build_strand(I, J, mu, 5 + n, "rees")
        assert koszul_betti(M, 5).beta == koszul_betti_sequence(M, 5).beta


def test_sequence_route_scope(ci22):
    J = sample_general_reduction(ci22, 2, 0)
    with pytest.raises(ValueError, match="mu < d"):
        koszul_betti_sequence(build_strand(ci22, J, 2, 6), 4)


def test_betti_nonnegative_and_reg_formula():
    I = ideal("x^4", "y^4", "z^3", "x*y*z", names=("x", "y", "z"))
    rep = stabilization_report(I)
    J = sample_general_reduction(I, rep.d, 0)
    bt = koszul_betti(build_strand(I, J, rep.b, 10, "rees"), 7)
    assert all(v >= 0 for row in bt.beta for v in row)
    if bt.certified:
        assert bt.reg_B == max(t - j for j, t, _ in bt.nonzero())


# --------------------------------------------------------------------------
# local cohomology


def test_h0_examples(ci22):
    assert h0_end(free_module(2, 8)) == NEG
    J = sample_general_reduction(ci22, 2, 0)
    assert h0_end(build_strand(ci22, J, 1, 8, "quotient")) == NEG
    # k in degree 0 is all torsion
    assert h0_end(residue_field(2, 6)) == 0


def test_h1_examples(ci22):
    assert h1_end(free_module(2, 8)).end_h1 == NEG
    rep = h1_end(ideal_module(T_ideal("T1", "T2"), 8))
    assert rep.end_h1 == 0 and rep.certified
    assert rep.h1_dims[0] == 1 and not any(rep.h1_dims[1:])
    J = sample_general_reduction(ci22, 2, 0)
    R = build_strand(ci22, J, 1, 8, "rees")
    # the b-strand of (x^2, y^2) is B^2, so there is no H^1 at all
    assert h1_end(R).end_h1 == NEG
    assert koszul_betti(R, 6).reg_B == 0


def test_h1_of_square_of_variables():
    # (T1,T2)^2 has H^1 = B/(T1,T2)^2 shifted: nonzero in degrees 0 and 1
    rep = h1_end(ideal_module(T_ideal("T1^2", "T1*T2", "T2^2"), 9))
    assert rep.h1_dims[:3] == [1, 2, 0]
    assert rep.end_h1 == 1


@given(st.integers(0, 10_000))
@settings(max_examples=15)
def test_ambient_and_family_saturations_agree(seed):
    rng = random.Random(seed)
    I = random_mprimary(rng, 2, 4)
    rep = stabilization_report(I)
    J = sample_general_reduction(I, rep.d, seed)
    for mu in (max(rep.b - 1, -1), rep.b):
        R = build_strand(I, J, mu, 9, "rees")
        a = h1_end(R, method="ambient")
        f = h1_end(R, method="families")
        assert a.h1_dims == f.h1_dims
        assert a.end_h1 == f.end_h1


def test_ambient_and_family_saturations_agree_n3():
    I = ideal("x^2", "y^3", "z^2", "x*z + y*z", names=("x", "y", "z"))
    rep = stabilization_report(I)
    J = sample_general_reduction(I, rep.d, 1)
    R = build_strand(I, J, rep.b, 7, "rees")
    a = h1_end(R, K=3, cutoff=2, method="ambient")
    f = h1_end(R, K=3, cutoff=2, method="families")
    assert a.h1_dims == f.h1_dims


def test_h1_fixed_power_and_cutoff(ci22):
    J = sample_general_reduction(ci22, 2, 0)
    R = build_strand(ci22, J, 0, 8, "rees")
    rep = h1_end(R, K=3, cutoff=3)
    assert rep.K == 3
    with pytest.raises(CutoffTooLarge):
        h1_end(R, K=5, cutoff=3)


def test_h1_equals_h0_of_quotient():
    # 0 -> R_mu -> F -> N_mu -> 0 with F saturated: H^1(R_mu) = H^0(N_mu)
    I = random_mprimary(random.Random(7), 2, 4)
    rep = stabilization_report(I)
    J = sample_general_reduction(I, rep.d, 0)
    for mu in range(0, rep.c + 1):
        R = build_strand(I, J, mu, 9, "rees")
        N = build_strand(I, J, mu, 9, "quotient")
        h1 = h1_end(R).h1_dims
        soc_total = [N.dim(t) for t in range(len(h1))]
        assert all(a <= b for a, b in zip(h1, soc_total))
        assert (h1_end(R).end_h1 == NEG) == (h0_end(N) == NEG)


@given(st.integers(0, 10_000))
@settings(max_examples=10)
def test_torsion_free_strands_grow(seed):
    rng = random.Random(seed)
    I = random_mprimary(rng, 2, 4)
    rep = stabilization_report(I)
    J = sample_general_reduction(I, rep.d, seed)
    R = build_strand(I, J, rep.b, 8, "rees")
    if h0_end(R) == NEG:
        d = R.dims
        assert all(b >= a for a, b in zip(d, d[1:]))


# --------------------------------------------------------------------------
# growth


def test_growth_examples(ci22):
    assert growth_degree(free_module(2, 8)) == 1
    J = sample_general_reduction(ci22, 2, 0)
    assert growth_degree(build_strand(ci22, J, 1, 8, "rees")) == 1
    N = build_strand(ci22, J, 0, 8, "quotient")
    assert growth_degree(N) == 1 and krull_dimension(N) == 2
    Z = build_strand(ci22, J, 1, 8, "quotient")
    assert growth_degree(Z) == NEG and krull_dimension(Z) == NEG
    assert krull_dimension(residue_field(2, 8)) == 0
    assert growth_degree([1, 2, 3]) == "undetermined"
    assert growth_degree([1, 4, 9, 16, 25, 36]) == 2


def test_infinite_regularity_with_too_few_forms(ci22):
    J = sample_general_reduction(ci22, 2, 0, count=1)
    R = build_strand(ci22, J, 0, 8, "rees")
    bt = koszul_betti(R, 6)
    assert bt.infinite_regularity and bt.reg_B == float("inf")


# --------------------------------------------------------------------------
# verdicts


def test_simple_stab_ci22(ci22):
    v = verify_simple_stab(ci22, 0)
    assert v.status == "pass"
    assert v.result["stab"] == 1 and v.result["degenerate"]
    assert v.result["cohomology"]["end_h1"] == NEG
    assert v.result["reg_B"] == 0


def test_simple_stab_m(m2):
    v = verify_simple_stab(m2, 0)
    assert v.status == "pass" and v.result["degenerate"]
    assert v.result["cohomology"]["end_h1"] == NEG


def test_simple_stab_nondegenerate():
    I = ideal("x^4", "y^3", "x^4 + 2*x^3*y + 5*x^2*y^2 + 7*x*y^3 + 3*y^4")
    v = verify_simple_stab(I, 1)
    assert not v.result["degenerate"]
    assert v.status == "pass"
    assert v.result["stab"] == v.result["cohomology"]["end_h1"] + 1


@pytest.mark.parametrize("seed", range(5))
def test_simple_stab_random_degrees_2_3(seed):
    rng = random.Random(seed)
    gens = [Polynomial.monomial(F, 2, (2, 0)), Polynomial.monomial(F, 2, (0, 3))]
    gens.append(Polynomial(F, 2, {(2, 1): rng.randint(1, 100), (1, 2): rng.randint(1, 100)}))
    gens.append(Polynomial(F, 2, {(1, 1): rng.randint(1, 100), (0, 2): rng.randint(1, 100)}))
    I = IdealSpec(F, ("x", "y"), tuple(gens))
    assert verify_simple_stab(I, seed).status == "pass"


def test_compcoh_ci22(ci22):
    v1 = verify_compcoh(ci22, 0, 1)
    assert v1.status == "pass" and v1.result["reg_B_N"] == NEG
    v0 = verify_compcoh(ci22, 0, 0)
    assert v0.status == "pass"
    assert (v0.result["reg_B_R"], v0.result["reg_B_N"], v0.result["dim_N"]) == (0, 1, 2)


def test_uncertified_verdict_is_inconclusive():
    I = ideal("x^4", "y^3", "x^4 + 2*x^3*y + 5*x^2*y^2 + 7*x*y^3 + 3*y^4")
    v = verify_simple_stab(I, 1, T=4, cutoff=2)
    assert v.status in ("inconclusive", "pass")
    assert all(c.status != "fail" for c in v.checks)
    assert any(isinstance(c.lhs, AtLeast) or isinstance(c.rhs, AtLeast) or not c.certified for c in v.checks)


def _dense_cubic():
    n = 3
    gens = [Polynomial.monomial(F3, n, tuple(3 * (j == i) for j in range(n))) for i in range(n)]
    rng = random.Random(3)
    gens.append(Polynomial(F3, n, {m: rng.randint(1, F3.p - 1) for m in
                                   [(a, b, 3 - a - b) for a in range(4) for b in range(4 - a)]}))
    return IdealSpec(F3, ("x", "y", "z"), tuple(gens))


F3 = FieldSpec.prime(32003)


@pytest.mark.slow
def test_compcoh_widens_cutoff_below_b():
    # Stab = 4 here, but R_{b-1} has generators up to t = 8
    I = _dense_cubic()
    rep = stabilization_report(I)
    assert (rep.b, rep.stab) == (1, 4)
    short = verify_compcoh(I, 0, rep.b - 1, rep=rep, cutoff=10)
    assert short.status == "inconclusive"
    v = verify_compcoh(I, 0, rep.b - 1, rep=rep)
    assert v.status == "pass" and v.cutoff > 10
    assert (v.result["reg_B_R"], v.result["reg_B_N"]) == (8, 7)
