from fractions import Fraction

import numpy as np
import pytest

from boltzmann import AtomKind, fomenko_graph, half_ellipse_billiard_graph
from boltzmann.errors import UnsupportedEnergy


def test_low_energy_graph():
    g = fomenko_graph(Fraction(-3, 4))
    assert [a.kind for a in g.atoms] == [AtomKind.A, AtomKind.A]
    assert len(g.edges) == 1
    e = g.edges[0]
    assert (e.r, e.epsilon) == (0, 1)
    assert g.families == ()


def test_high_energy_graph():
    g = fomenko_graph(-0.25)
    kinds = sorted(a.kind.value for a in g.atoms)
    assert kinds == ["A", "A", "A*"]
    assert len(g.edges) == 2
    assert all(e.r == 0 and e.epsilon == 1 for e in g.edges)
    assert all(g.atom(e.source).kind is AtomKind.A_STAR for e in g.edges)
    assert len(g.families) == 1 and g.families[0].n == 0


def test_high_energy_matches_half_ellipse_billiard():
    assert fomenko_graph(-0.25).signature() == half_ellipse_billiard_graph().signature()


@pytest.mark.parametrize("E", np.linspace(-0.99, -0.51, 7))
def test_low_range_constant(E):
    assert fomenko_graph(float(E)) == fomenko_graph(Fraction(-3, 4))


@pytest.mark.parametrize("E", [-1, Fraction(-1, 2), 0, 0.5, -2])
def test_unsupported_energies(E):
    with pytest.raises(UnsupportedEnergy):
        fomenko_graph(E)


def test_text_and_dict():
    g = fomenko_graph(-0.25)
    d = g.to_dict()
    assert d["families"] == [{"atoms": ["A*_axis"], "n": 0}]
    text = g.to_text()
    assert "n=0" in text and "r=0" in text and "eps=1" in text
