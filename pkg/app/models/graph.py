"""
Weighted directed multigraphs: arc multiplicities between labelled vertices.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from app.models.errors import UsageError

Arc = Tuple[int, int]


@dataclass(frozen=True)
class WeightedDigraph:
    """
    ``mult[(i, j)]`` is the number of parallel arcs from i to j.

    Only positive multiplicities are stored; missing pairs have multiplicity 0.
    """

    vertices: Tuple[int, ...]
    mult: Dict[Arc, int] = field(default_factory=dict)
    root: Optional[int] = None

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if not vertices:
            raise UsageError("a graph needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise UsageError(f"duplicate vertex labels in {vertices}")
        known = set(vertices)
        clean: Dict[Arc, int] = {}
        for (i, j), m in self.mult.items():
            if i == j:
                raise UsageError(f"self-loop at vertex {i}")
            if i not in known or j not in known:
                raise UsageError(f"arc ({i}, {j}) leaves the vertex set")
            if m < 0:
                raise UsageError(f"negative multiplicity {m} on arc ({i}, {j})")
            if m:
                clean[(i, j)] = m
        if self.root is not None and self.root not in known:
            raise UsageError(f"root {self.root} is not a vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "mult", clean)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def multiplicity(self, i: int, j: int) -> int:
        return self.mult.get((i, j), 0)

    def arc_classes(self) -> List[Arc]:
        """Ordered pairs with positive multiplicity, sorted."""
        return sorted(self.mult)

    def total_multiplicity(self) -> int:
        return sum(self.mult.values())

    def expanded_arcs(self) -> Iterator[Arc]:
        """Every individual arc, parallel copies repeated."""
        for arc in self.arc_classes():
            for _ in range(self.mult[arc]):
                yield arc

    def require_vertex(self, v: int) -> None:
        if v not in self.vertices:
            raise UsageError(f"vertex {v} out of range {self.vertices}")
