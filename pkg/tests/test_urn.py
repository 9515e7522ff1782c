from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from hooknet.seed import DegreeProfile
from hooknet.urn import (
    NonInvertibleNetwork,
    build_replacement_matrix,
    eigenvalues,
    principal_eigenvector,
    verify_spectrum,
)

from oracle import replacement_matrix
from strategies import profiles

BINARY_A = [[2, 2, 1, 0], [4, 0, 0, 1], [4, 2, -1, 0], [4, 2, 0, -1]]
TERNARY_A = [
    [3, 3, 2, 0, 0, 0],
    [6, 0, 0, 2, 0, 0],
    [6, 3, -2, 0, 1, 0],
    [6, 3, 0, -2, 0, 1],
    [6, 3, 0, 0, -1, 0],
    [6, 3, 0, 0, 0, -1],
]


def test_golden_matrices(unary, binary, ternary, degenerate):
    assert build_replacement_matrix(unary).matrix() == [[1, 1], [2, 0]]
    assert build_replacement_matrix(binary).matrix() == BINARY_A
    assert build_replacement_matrix(ternary).matrix() == TERNARY_A
    assert build_replacement_matrix(degenerate).matrix() == [[-1, 2, 1], [0, 1, 1], [0, 2, 0]]


def test_initial_balls(binary, degenerate):
    assert build_replacement_matrix(binary).X0 == (6, 2, 0, 0)
    assert build_replacement_matrix(degenerate).X0 == (1, 2, 1)


def test_binary_spectrum(binary):
    model = build_replacement_matrix(binary)
    spec = principal_eigenvector(model)
    assert model.lambda1 == 5
    assert spec.v1 == tuple(Fraction(x, 21) for x in (12, 6, 2, 1))
    assert spec.eigenvalues == ((5, 1), (-1, 1), (-2, 2))
    assert verify_spectrum(model, spec).passed


def test_degenerate_flags(degenerate):
    spec = principal_eigenvector(build_replacement_matrix(degenerate))
    assert spec.v1 == (0, Fraction(2, 3), Fraction(1, 3))
    assert spec.degenerate and spec.invertible


def test_wrong_spectrum_claim_is_caught(binary):
    model = build_replacement_matrix(binary)
    assert not verify_spectrum(model, [(5, 1), (-1, 1), (-3, 2)]).passed
    assert not verify_spectrum(model, [(5, 1), (-1, 1), (-2, 1)]).passed


def test_path_network_refused():
    p = DegreeProfile(1, (1,), (2,), 0)
    model = build_replacement_matrix(p)
    assert model.lambda1 == 0
    with pytest.raises(NonInvertibleNetwork, match="non-invertible path network"):
        principal_eigenvector(model)


@settings(max_examples=200, deadline=None)
@given(profiles())
def test_structural_properties(p):
    model = build_replacement_matrix(p)
    assert all(sum(row) == model.lambda1 for row in model.A)
    spec = principal_eigenvector(model)
    assert sum(spec.v1) == 1 and min(spec.v1) >= 0
    at = [[model.A[r][c] for r in range(model.colors)] for c in range(model.colors)]
    assert [sum(a * v for a, v in zip(row, spec.v1)) for row in at] == [model.lambda1 * v for v in spec.v1]
    assert verify_spectrum(model, spec).passed
    assert spec.degenerate == (p.counts[p.hook_index] == 1)


@settings(max_examples=25, deadline=None)
@given(profiles(max_k=3, max_m=3, max_count=5))
def test_matrix_and_multiplicities_match_sympy(p):
    A = replacement_matrix(list(p.counts), p.hook_index, p.m)
    assert build_replacement_matrix(p).matrix() == A.tolist()
    t = sp.Symbol("t")
    roots = sp.roots(sp.Poly(A.charpoly(t).as_expr(), t))
    assert tuple(sorted(((int(r), mult) for r, mult in roots.items()), reverse=True)) == eigenvalues(p)
