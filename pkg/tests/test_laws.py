from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings

from hooknet import exact
from hooknet.laws import (
    analyze,
    covariance_residual,
    degree_linear_map,
    draw_covariance,
    solve_covariance,
)
from hooknet.seed import DegreeProfile
from hooknet.urn import NonInvertibleNetwork, build_replacement_matrix, principal_eigenvector

import oracle
from conftest import report_for
from strategies import profiles


def scaled(s, rows):
    return tuple(tuple(F(s) * x for x in row) for row in rows)


BINARY_Q = scaled(F(5, 441), [[48, -32, -27, 11], [-32, 40, 11, -19], [-27, 11, 20, -4], [11, -19, -4, 12]])
BINARY_SIGMA = scaled(
    F(5, 882),
    [
        [24, -16, -27, 11, 3, 5],
        [-16, 20, 11, -19, 5, -1],
        [-27, 11, 40, -8, -13, -3],
        [11, -19, -8, 24, -3, -5],
        [3, 5, -13, -3, 10, -2],
        [5, -1, -3, -5, -2, 6],
    ],
)

# sympy oracle (tests/oracle.py), frozen
TERNARY_D_STAR = tuple(F(x, 165) for x in (240, 120, 72, 36, 16, 8, 2, 1))
TERNARY_SIGMA = scaled(
    F(1, 2477475),
    [
        [351000, -210600, -387720, 132840, 22740, 65820, 13980, 11940],
        [-210600, 280800, 132840, -260280, 65820, -21540, 11940, 1020],
        [-387720, 132840, 572724, -90828, -162468, -36684, -22536, -5328],
        [132840, -260280, -90828, 331776, -36684, -62892, -5328, -8604],
        [22740, 65820, -162468, -36684, 156616, -23992, -16888, -5144],
        [65820, -21540, -36684, -62892, -23992, 90304, -5144, -5872],
        [13980, 11940, -22536, -5328, -16888, -5144, 25444, -1468],
        [11940, 1020, -5328, -8604, -5144, -5872, -1468, 13456],
    ],
)
DEGENERATE_G = scaled(
    F(1, 9),
    [
        [0, 0, 0, 0, 0, 0],
        [0, 1, -1, 0, -1, 1],
        [0, -1, 1, 0, 1, -1],
        [0, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 1, -1],
        [0, 1, -1, 0, -1, 1],
    ],
)
DEGENERATE_PLAIN = scaled(F(1, 9), [[0, 0, 0, 0], [0, 1, -2, 1], [0, -2, 4, -2], [0, 1, -2, 1]])


def test_binary_goldens():
    r = report_for("k4", 2)
    assert r.covariance.Q == BINARY_Q
    assert r.Sigma_D == BINARY_SIGMA
    assert r.D_star == tuple(F(x, 21) for x in (30, 15, 10, 5, 2, 1))
    assert r.undivided_D_star == tuple(F(x, 21) for x in (60, 30, 10, 5, 2, 1))
    assert draw_covariance(r.model, r.covariance.Q) == scaled(
        F(5, 882), [[24, -16, -3, -5], [-16, 20, -5, 1], [-3, -5, 10, -2], [-5, 1, -2, 6]]
    )


def test_unary_goldens():
    r = report_for("k4", 1)
    assert r.D_star == tuple(F(x, 3) for x in (4, 2, 2, 1))
    assert r.Sigma_D == scaled(F(1, 9), [[1, -1, -1, 1], [-1, 1, 1, -1], [-1, 1, 1, -1], [1, -1, -1, 1]])
    assert r.covariance.Q[0][0] == F(1, 9)


def test_ternary_against_oracle():
    r = report_for("k4", 3)
    assert r.D_star == TERNARY_D_STAR
    assert r.Sigma_D == TERNARY_SIGMA


def test_degenerate_against_oracle():
    r = report_for("degenerate", 1)
    assert r.degenerate and not r.clt_applicable
    assert r.covariance.residual_zero
    assert r.covariance.Q == scaled(F(1, 9), [[0, 0, 0], [0, 1, -1], [0, -1, 1]])
    assert r.Sigma_D == DEGENERATE_G
    assert r.plain_D_star == (0, F(4, 3), F(4, 3), F(1, 3))
    assert r.plain_Sigma == DEGENERATE_PLAIN
    assert exact.is_psd(r.Sigma_D) and exact.is_psd(r.plain_Sigma)


def test_printed_degenerate_matrices_are_not_covariances():
    printed_g = scaled(
        F(1, 9),
        [
            [0, 0, 0, 0, 0, 0],
            [0, 1, -1, 0, -1, 1],
            [0, -1, 1, 0, -1, 1],
            [0, 0, 0, 0, 0, 0],
            [0, -1, -1, 0, 1, -1],
            [0, 1, 1, 0, -1, 1],
        ],
    )
    printed_plain = scaled(F(1, 9), [[0, 0, 0, 0], [0, 1, -2, 1], [0, -2, 0, 0], [0, 1, 0, 1]])
    assert not exact.is_psd(printed_g)
    assert not exact.is_psd(printed_plain)


def test_degree_map_reproduces_seed_counts(binary):
    model = build_replacement_matrix(binary)
    assert degree_linear_map(model).apply(model.X0) == [3, 1, 0, 0, 0, 0]


@pytest.mark.parametrize("name, m", [("k4", 1), ("k4", 2), ("k4", 3), ("degenerate", 1)])
def test_solvers_agree(name, m):
    r = report_for(name, m)
    a = solve_covariance(r.model, r.spectrum, "halfvec")
    b = solve_covariance(r.model, r.spectrum, "polynomial")
    assert a.Q == b.Q


def test_residual_detects_wrong_q():
    r = report_for("k4", 2)
    bad = [list(row) for row in r.covariance.Q]
    bad[0][1] += F(1, 1000)
    bad[1][0] += F(1, 1000)
    assert not exact.is_zero(covariance_residual(r.model, r.spectrum, bad))


def test_large_instance_uses_polynomial():
    r = analyze(DegreeProfile(5, (1, 2, 3, 4, 5, 6), (9, 8, 7, 6, 5, 4), 2))
    assert r.covariance.method == "polynomial"
    assert r.covariance.residual_zero
    assert sum(r.D_star) == r.profile.tau0 - 1


def test_non_invertible_refused():
    with pytest.raises(NonInvertibleNetwork):
        analyze(DegreeProfile(1, (1,), (2,), 0))


@settings(max_examples=40, deadline=None)
@given(profiles(max_k=4, max_m=3, max_count=6))
def test_structural_laws(p):
    r = analyze(p)
    assert sum(r.D_star) == p.tau0 - 1
    for mat in (r.covariance.Q, r.Sigma_D, r.plain_Sigma):
        assert exact.is_symmetric(mat)
        assert all(sum(row) == 0 for row in mat)
        assert exact.is_psd(mat)
    assert exact.is_zero(covariance_residual(r.model, r.spectrum, r.covariance.Q))


@settings(max_examples=10, deadline=None)
@given(profiles(max_k=2, max_m=2, max_count=4))
def test_covariance_against_sympy(p):
    model = build_replacement_matrix(p)
    spec = principal_eigenvector(model)
    A = sp.Matrix(model.matrix())
    v = oracle.principal(A, model.lambda1)
    assert list(v) == list(spec.v1)
    Q = oracle.covariance(A, v, model.lambda1)
    assert solve_covariance(model, spec).Q == tuple(tuple(F(int(x.p), int(x.q)) for x in Q.row(i)) for i in range(Q.rows))
