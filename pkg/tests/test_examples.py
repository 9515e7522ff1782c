import pytest

from hooknet.examples import EXAMPLES, UnknownExample, get_example, manifest
from hooknet.report import from_rational


def _agreement(name):
    return {(e["quantity"], e["provenance"]): e["agrees"] for e in manifest(name)["entries"]}


def test_names():
    assert list(EXAMPLES) == ["unary-5.2", "degenerate-5.3", "binary-5.4", "ternary-3"]
    with pytest.raises(UnknownExample, match="unary-5.2, degenerate-5.3, binary-5.4, ternary-3"):
        get_example("nosuch")


@pytest.mark.parametrize("name", ["unary-5.2", "ternary-3"])
def test_all_published_values_agree(name):
    assert all(_agreement(name).values())


def test_binary_misprinted_limit_is_flagged():
    agree = _agreement("binary-5.4")
    assert agree[("D_star", "published")] is False
    assert agree[("Sigma_D", "published")] and agree[("Q", "published")] and agree[("v1", "published")]
    doc = manifest("binary-5.4")
    derived = next(e for e in doc["entries"] if e["quantity"] == "D_star" and e["provenance"] == "derived")
    assert sum(from_rational(x) for x in derived["value"]) == 3


def test_degenerate_misprints_are_flagged():
    agree = _agreement("degenerate-5.3")
    for q in ("A", "ball_limits", "D_star", "plain_D_star", "draw_covariance"):
        assert agree[(q, "published")], q
    for q in ("Sigma_D", "plain_Sigma", "plain_Sigma[2][2]"):
        assert agree[(q, "published")] is False, q


def test_seeds_have_expected_profiles():
    p = get_example("binary-5.4").profile()
    assert (p.m, p.degrees, p.counts) == (2, (3, 7), (3, 1))
    p = get_example("degenerate-5.3").profile()
    assert (p.m, p.degrees, p.counts) == (1, (1, 2, 3), (1, 2, 1))
