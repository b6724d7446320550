"""Combinatorial models of the execution-path spaces of a precubical set.

The path space between two states is the disjoint union over grades of the
classifying spaces of the cube-chain categories.  Each category is studied
through its nerve; grades never interact, so only the number of components
is summed across grades.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chains import (
    ChainCategory,
    CubeChain,
    build_category,
    concat,
    enumerate_chains,
    grade_bound,
)
from .nerve import HomologySummary, homology, nerve, pi0
from .pcs import PrecubicalSet, standard_cube


@dataclass
class GradeModel:
    category: ChainCategory
    homology: HomologySummary
    components: list[list[int]]


@dataclass
class PathSpaceModel:
    source: str
    target: str
    grades: dict[int, GradeModel] = field(default_factory=dict)

    @property
    def pi0(self) -> int:
        return sum(len(g.components) for g in self.grades.values())

    @property
    def is_empty(self) -> bool:
        return not self.grades

    def report(self) -> str:
        lines = ["pathspace v1", f"from {self.source} to {self.target}"]
        for g in sorted(self.grades):
            gm = self.grades[g]
            lines.append(f"grade {g}")
            lines.append(f"  objects = {len(gm.category.objects)}")
            lines.append(f"  morphisms = {len(gm.category.morphisms)}")
            lines.append(f"  components = {len(gm.components)}")
            lines.append("  betti = " + " ".join(map(str, gm.homology.betti)))
            lines.extend("  " + x for x in gm.homology.lines())
        lines.append(f"pi0 = {self.pi0}")
        return "\n".join(lines) + "\n"


def path_space_model(
    K: PrecubicalSet, source: str, target: str, n_max: int | None = None
) -> PathSpaceModel:
    model = PathSpaceModel(source, target)
    for g, objects in enumerate_chains(K, source, target, n_max).items():
        if not objects:
            continue
        cat = build_category(K, source, target, g, objects)
        model.grades[g] = GradeModel(cat, homology(nerve(cat)), pi0(cat))
    return model


@dataclass
class FlowModel:
    """States and path-space models; composition is concatenation of chains.

    There are no identities: grade 0 never appears.
    """

    complex: PrecubicalSet
    states: tuple[str, ...]
    path_spaces: dict[tuple[str, str], PathSpaceModel]

    def compose(self, x: CubeChain, y: CubeChain) -> CubeChain:
        return compose_classes(x, y)


def flow_model(K: PrecubicalSet, n_max: int | None = None, pairs=None) -> FlowModel:
    bound = grade_bound(K, n_max)
    if pairs is None:
        pairs = itertools.product(K.vertices, repeat=2)
    spaces = {}
    for a, b in pairs:
        m = path_space_model(K, a, b, bound)
        if not m.is_empty:
            spaces[(a, b)] = m
    return FlowModel(K, K.vertices, spaces)


def natural_cube_flow(n: int) -> FlowModel:
    """The flow of ``[]^n``: one contractible model per pair ``a < b``."""
    return flow_model(standard_cube(n))


def compose_classes(x: CubeChain, y: CubeChain) -> CubeChain:
    return concat(x, y)


def class_of(model: PathSpaceModel, chain: CubeChain) -> tuple[int, int]:
    """``(grade, component number)`` of a chain inside a path-space model."""
    gm = model.grades[chain.grade]
    i = gm.category.index(chain)
    for n, comp in enumerate(gm.components):
        if i in comp:
            return chain.grade, n
    raise KeyError(chain)
