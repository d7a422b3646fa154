from fractions import Fraction

import pytest

import rtquant


def test_exact_errors():
    assert rtquant.vn(1) == Fraction(27, 176)
    assert rtquant.vn(2) == Fraction(117, 1408)
    assert rtquant.vn(6) == Fraction(3537, 563200)
    assert rtquant.vn(11) == Fraction(5211, 2816000)


def test_sets_and_counts():
    assert rtquant.optimal_sets(2) == [["a(1,2)", "a(3)"]]
    assert len(rtquant.optimal_sets(7)) == 2
    assert dict(rtquant.counts(57, 60)) == {57: 495, 58: 792, 59: 924, 60: 792}


def test_node_errors():
    assert rtquant.node_error("a(1,2)") == Fraction(423, 7040)
    assert rtquant.set_distortion(["a(1)", "a(2)", "a(3)"]) == Fraction(189, 7040)
    with pytest.raises(ValueError):
        rtquant.set_distortion(["a(3)", "a(31)"])
    x, y = rtquant.node_point("a(∅)")
    assert x == pytest.approx(0.5)
    assert y == pytest.approx(3 ** 0.5 / 4)


def test_documents():
    assert rtquant.enumeration_json(2).startswith('{"n":2,')
    assert rtquant.count_csv(3, 3).splitlines()[1] == "3,1,189,7040,0.0268466"
    assert rtquant.tree_dot(8, 9).startswith("digraph")
    assert rtquant.plot_svg(3, depth=2) == rtquant.plot_svg(3, depth=2)
    with pytest.raises(rtquant.UsageError):
        rtquant.plot_svg(7, set_index=5)


def test_sampling_and_verify():
    pts = rtquant.sample(1000, seed=3)
    assert len(pts) == 1000
    assert pts == rtquant.sample(1000, seed=3)
    ok, text = rtquant.verify(2, samples=100_000, restarts=4)
    assert ok
    assert text.endswith("PASS\n")
