"""Fomenko graphs of the compact isoenergy manifolds (fixed E < 0)."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedEnergy


class AtomKind(enum.Enum):
    A = "A"
    A_STAR = "A*"


@dataclass(frozen=True)
class Atom:
    name: str
    kind: AtomKind
    level: str  # singular curve in the (E, D)-plane carrying this atom


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    r: Fraction
    epsilon: int


@dataclass(frozen=True)
class Family:
    atoms: tuple
    n: int


@dataclass(frozen=True)
class FomenkoGraph:
    atoms: tuple
    edges: tuple
    families: tuple = ()

    def atom(self, name: str) -> Atom:
        return next(a for a in self.atoms if a.name == name)

    def signature(self) -> tuple:
        """Labelling-independent form used to compare graph structures."""
        kinds = {a.name: a.kind.value for a in self.atoms}
        edges = sorted((kinds[e.source], kinds[e.target], str(e.r), e.epsilon) for e in self.edges)
        fams = sorted((tuple(sorted(kinds[n] for n in f.atoms)), f.n) for f in self.families)
        return (tuple(sorted(kinds.values())), tuple(edges), tuple(fams))

    def to_dict(self) -> dict:
        return {
            "atoms": [{"name": a.name, "kind": a.kind.value, "level": a.level} for a in self.atoms],
            "edges": [{"source": e.source, "target": e.target, "r": str(e.r), "epsilon": e.epsilon}
                      for e in self.edges],
            "families": [{"atoms": list(f.atoms), "n": f.n} for f in self.families],
        }

    def to_text(self) -> str:
        lines = ["atoms:"]
        lines += [f"  {a.name}: {a.kind.value}  [{a.level}]" for a in self.atoms]
        lines.append("edges:")
        lines += [f"  {e.source} -> {e.target}  r={e.r}  eps={e.epsilon}" for e in self.edges]
        if self.families:
            lines.append("families:")
            lines += [f"  {{{', '.join(f.atoms)}}}  n={f.n}" for f in self.families]
        return "\n".join(lines)


_LOW_ENERGY = FomenkoGraph(
    atoms=(Atom("A_wall", AtomKind.A, "D+2E=0"), Atom("A_axis", AtomKind.A, "D=2")),
    edges=(Edge("A_wall", "A_axis", Fraction(0), 1),),
)

_HIGH_ENERGY = FomenkoGraph(
    atoms=(Atom("A*_axis", AtomKind.A_STAR, "D=2"),
           Atom("A_ellipse", AtomKind.A, "1+2DE+4E^2=0"),
           Atom("A_wall", AtomKind.A, "D+2E=0")),
    edges=(Edge("A*_axis", "A_ellipse", Fraction(0), 1),
           Edge("A*_axis", "A_wall", Fraction(0), 1)),
    families=(Family(("A*_axis",), 0),),
)


def fomenko_graph(E) -> FomenkoGraph:
    """Graph for ``-1 < E < -1/2`` (two A atoms) or ``-1/2 < E < 0`` (A* with two A atoms)."""
    if E <= -1 or E >= 0 or E == Fraction(-1, 2):
        raise UnsupportedEnergy(f"no Fomenko graph for E = {E}; need E in (-1, -1/2) or (-1/2, 0)")
    return _LOW_ENERGY if E < Fraction(-1, 2) else _HIGH_ENERGY


def half_ellipse_billiard_graph() -> FomenkoGraph:
    """Known graph of the billiard inside a half-ellipse (A* joined to two A atoms)."""
    return FomenkoGraph(
        atoms=(Atom("A*", AtomKind.A_STAR, "separatrix"),
               Atom("A1", AtomKind.A, "minimum"), Atom("A2", AtomKind.A, "maximum")),
        edges=(Edge("A*", "A1", Fraction(0), 1), Edge("A*", "A2", Fraction(0), 1)),
        families=(Family(("A*",), 0),),
    )
