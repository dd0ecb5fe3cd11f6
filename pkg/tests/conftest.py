import random

import pytest

from dsvision.evidence import Clause, Frame, MassFunction, make_frame
from dsvision.knowledge import KnowledgeSource


@pytest.fixture
def shutter_frame() -> Frame:
    return make_frame(["long", "low", "next-to"])


def random_cube(rng: random.Random, frame: Frame, allow_negative: bool = True) -> Clause:
    literals = []
    for atom in frame.atoms:
        roll = rng.random()
        if roll < 1 / 3:
            literals.append(atom)
        elif allow_negative and roll < 1 / 2:
            literals.append("!" + atom)
    return Clause.conjunction(frame, literals)


def random_mass(rng: random.Random, frame: Frame, max_focals: int = 5,
                allow_negative: bool = True) -> MassFunction:
    n_focals = rng.randint(1, max_focals)
    focals = {}
    for _ in range(n_focals):
        focals.setdefault(random_cube(rng, frame, allow_negative), rng.random() + 0.05)
    total = sum(focals.values())
    return MassFunction(frame, {c: m / total for c, m in focals.items()})


def random_knowledge(rng: random.Random, frame: Frame, max_focals: int = 4) -> KnowledgeSource:
    focals = {}
    for _ in range(rng.randint(1, max_focals)):
        if rng.random() < 0.3:
            atoms = [a for a in frame.atoms if rng.random() < 0.6]
            if not atoms:
                atoms = [rng.choice(frame.atoms)]
            clause = Clause.disjunction(frame, atoms)
        else:
            atoms = [a for a in frame.atoms if rng.random() < 0.5]
            if not atoms:
                atoms = [rng.choice(frame.atoms)]
            clause = Clause.conjunction(frame, atoms)
        focals.setdefault(clause, rng.random() + 0.05)
    theta = rng.random() * 0.5
    total = sum(focals.values()) + theta
    return KnowledgeSource(
        "random", frame,
        tuple((c, m / total) for c, m in focals.items()),
        theta / total)


def all_cubes(frame: Frame) -> list[Clause]:
    """Every conjunction clause over the frame (each atom absent, positive
    or negated)."""
    cubes = []
    n = len(frame)
    for assignment in range(3 ** n):
        literals = []
        rest = assignment
        for atom in frame.atoms:
            rest, state = divmod(rest, 3)
            if state == 1:
                literals.append(atom)
            elif state == 2:
                literals.append("!" + atom)
        cubes.append(Clause.conjunction(frame, literals))
    return cubes


def all_disjunctions(frame: Frame) -> list[Clause]:
    n = len(frame)
    out = []
    for mask in range(1, 1 << n):
        atoms = [a for i, a in enumerate(frame.atoms) if mask >> i & 1]
        out.append(Clause.disjunction(frame, atoms))
    return out
