"""Frames, focal clauses, mass functions and Dempster's combination rule.

Focal elements are represented as literal cubes (conjunctions of literals)
over a frame of binary feature atoms, plus positive disjunctions for
knowledge-source focals.  A cube is stored as a pair of bitmasks (positive
atoms, negated atoms), which makes intersection a bitwise OR and the subset
test a bitwise containment check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    ContradictionError,
    DuplicateAtomError,
    EmptyNameError,
    FrameMismatchError,
    NormalizationError,
    ParseError,
    TooManyAtomsError,
    TotalConflictError,
    UnknownAtomError,
)

MAX_ATOMS = 16
MASS_SUM_TOL = 1e-9
TOTAL_CONFLICT_TOL = 1e-12

THETA_TOKEN = "THETA"

CONJUNCTION = "and"
DISJUNCTION = "or"


@dataclass(frozen=True)
class Frame:
    """An ordered collection of binary feature atoms.

    The worlds of the frame are the 2^n truth assignments over its atoms;
    atom order is the input order and fixes all canonical serializations.
    """

    atoms: tuple[str, ...]

    def __post_init__(self):
        if not self.atoms:
            raise EmptyNameError("a frame needs at least one atom")
        if len(self.atoms) > MAX_ATOMS:
            raise TooManyAtomsError(f"{len(self.atoms)} atoms exceeds the bound of {MAX_ATOMS}")
        seen = set()
        for name in self.atoms:
            if not name:
                raise EmptyNameError("atom names must be non-empty")
            if name in seen:
                raise DuplicateAtomError(f"duplicate atom {name!r}")
            seen.add(name)

    def __len__(self) -> int:
        return len(self.atoms)

    def index(self, atom: str) -> int:
        try:
            return self.atoms.index(atom)
        except ValueError:
            raise UnknownAtomError(f"atom {atom!r} not in frame {list(self.atoms)}") from None


def make_frame(atom_names: Iterable[str]) -> Frame:
    return Frame(tuple(atom_names))


@dataclass(frozen=True)
class Literal:
    atom: str
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else "!" + self.atom


@dataclass(frozen=True)
class Clause:
    """A focal element: a conjunction of literals or a disjunction of atoms.

    The empty conjunction denotes the whole frame (theta).  Disjunctions are
    restricted to positive atoms, the only form knowledge sources use.
    """

    frame: Frame
    kind: str
    pos: int
    neg: int

    def __post_init__(self):
        if self.kind not in (CONJUNCTION, DISJUNCTION):
            raise ValueError(f"bad clause kind {self.kind!r}")
        if self.kind == CONJUNCTION and self.pos & self.neg:
            raise ContradictionError("conjunction contains both polarities of an atom")
        if self.kind == DISJUNCTION:
            if self.neg:
                raise ContradictionError("disjunctions may contain only positive atoms")
            if not self.pos:
                raise ContradictionError("an empty disjunction denotes the empty set")

    @staticmethod
    def conjunction(frame: Frame, literals: Iterable[Literal | str]) -> "Clause":
        pos = neg = 0
        for lit in literals:
            if isinstance(lit, str):
                lit = Literal(lit[1:], False) if lit.startswith("!") else Literal(lit)
            bit = 1 << frame.index(lit.atom)
            if lit.positive:
                pos |= bit
            else:
                neg |= bit
        return Clause(frame, CONJUNCTION, pos, neg)

    @staticmethod
    def disjunction(frame: Frame, atoms: Iterable[str]) -> "Clause":
        pos = 0
        for atom in atoms:
            pos |= 1 << frame.index(atom)
        return Clause(frame, DISJUNCTION, pos, 0)

    @staticmethod
    def theta(frame: Frame) -> "Clause":
        return Clause(frame, CONJUNCTION, 0, 0)

    @staticmethod
    def parse(frame: Frame, text: str) -> "Clause":
        """Parse the text form: atoms joined by ``&`` or ``|``, ``!`` for
        negation, ``THETA`` for the whole frame."""
        text = text.strip()
        if not text:
            raise ParseError("empty clause")
        if text == THETA_TOKEN:
            return Clause.theta(frame)
        if "&" in text and "|" in text:
            raise ParseError(f"clause {text!r} mixes conjunction and disjunction")
        if "|" in text:
            parts = [p.strip() for p in text.split("|")]
            if any(p.startswith("!") for p in parts):
                raise ParseError(f"negated atom in disjunction {text!r}")
            return Clause.disjunction(frame, parts)
        literals = []
        for part in (p.strip() for p in text.split("&")):
            if part.startswith("!"):
                literals.append(Literal(part[1:], positive=False))
            else:
                literals.append(Literal(part))
        return Clause.conjunction(frame, literals)

    @property
    def is_theta(self) -> bool:
        return self.kind == CONJUNCTION and self.pos == 0 and self.neg == 0

    @property
    def is_positive(self) -> bool:
        return self.neg == 0

    def literals(self) -> Iterator[Literal]:
        for i, atom in enumerate(self.frame.atoms):
            bit = 1 << i
            if self.pos & bit:
                yield Literal(atom)
            elif self.neg & bit:
                yield Literal(atom, positive=False)

    def __str__(self) -> str:
        if self.is_theta:
            return THETA_TOKEN
        joiner = "&" if self.kind == CONJUNCTION else "|"
        return joiner.join(str(lit) for lit in self.literals())


def _check_same_frame(a, b) -> None:
    if a.frame != b.frame:
        raise FrameMismatchError(f"frames differ: {a.frame.atoms} vs {b.frame.atoms}")


def clause_subset(a: Clause, b: Clause) -> bool:
    """World-set containment of cube ``a`` in clause ``b``.

    For a conjunction ``b`` every literal of ``b`` must appear in ``a``; for a
    positive disjunction ``b`` some atom of ``b`` must appear positively in
    ``a``.  Theta is a subset only of theta.
    """
    _check_same_frame(a, b)
    if a.kind != CONJUNCTION:
        raise ValueError("subset test requires a conjunction on the left")
    if b.kind == CONJUNCTION:
        return (a.pos & b.pos) == b.pos and (a.neg & b.neg) == b.neg
    return (a.pos & b.pos) != 0


def clause_intersect(a: Clause, b: Clause) -> Clause | None:
    """Intersection of two cubes: the union of their literal sets, or None
    when some atom occurs with both polarities (the empty set)."""
    _check_same_frame(a, b)
    if a.kind != CONJUNCTION or b.kind != CONJUNCTION:
        raise ValueError("intersection is defined on conjunction clauses")
    pos = a.pos | b.pos
    neg = a.neg | b.neg
    if pos & neg:
        return None
    return Clause(a.frame, CONJUNCTION, pos, neg)


class MassFunction:
    """A basic probability assignment over conjunction focal clauses.

    Masses are strictly positive, zero-mass focals are dropped and the total
    must be 1 within ``MASS_SUM_TOL``.  Immutable after construction.
    """

    __slots__ = ("frame", "_focals")

    def __init__(self, frame: Frame, focals: Mapping[Clause, float]):
        cleaned: dict[Clause, float] = {}
        for clause, mass in focals.items():
            if clause.frame != frame:
                raise FrameMismatchError("focal clause belongs to another frame")
            if clause.kind != CONJUNCTION:
                raise ValueError("mass-function focals must be conjunction clauses")
            if mass < 0:
                raise NormalizationError(f"negative mass {mass} on {clause}")
            if mass > 0:
                cleaned[clause] = cleaned.get(clause, 0.0) + mass
        total = math.fsum(cleaned.values())
        if abs(total - 1.0) > MASS_SUM_TOL:
            raise NormalizationError(f"masses sum to {total}, expected 1")
        self.frame = frame
        self._focals = cleaned

    @property
    def focals(self) -> dict[Clause, float]:
        return dict(self._focals)

    def mass(self, clause: Clause) -> float:
        return self._focals.get(clause, 0.0)

    def items(self):
        return self._focals.items()

    def __len__(self) -> int:
        return len(self._focals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._focals == other._focals

    def __repr__(self) -> str:
        inner = ", ".join(f"{c}: {m:.4g}" for c, m in sorted_focals(self))
        return f"MassFunction({{{inner}}})"


@dataclass(frozen=True)
class CombineOutcome:
    result: MassFunction
    conflict: float


def sorted_focals(m: MassFunction) -> list[tuple[Clause, float]]:
    """Focals in canonical order: theta last, otherwise by bitmask."""
    return sorted(m.items(), key=lambda cm: (cm[0].is_theta, cm[0].pos, cm[0].neg))


def vacuous(frame: Frame) -> MassFunction:
    return MassFunction(frame, {Clause.theta(frame): 1.0})


def simple_support(frame: Frame, focal: Clause, s: float) -> MassFunction:
    """Mass ``s`` on one focal, the remainder of the unit mass on theta."""
    if not 0.0 <= s <= 1.0:
        raise NormalizationError(f"support {s} outside [0, 1]")
    if focal.frame != frame:
        raise FrameMismatchError("focal clause belongs to another frame")
    focals: dict[Clause, float] = {Clause.theta(frame): 1.0 - s}
    if s > 0:
        focals[focal] = focals.get(focal, 0.0) + s
    return MassFunction(frame, focals)


def validate(m: MassFunction) -> list[str]:
    """Check the basic-probability-assignment axioms; empty list means ok."""
    violations = []
    total = math.fsum(mass for _, mass in m.items())
    if abs(total - 1.0) > MASS_SUM_TOL:
        violations.append(f"masses sum to {total:.12g}, expected 1")
    for clause, mass in m.items():
        if mass <= 0:
            violations.append(f"non-positive mass {mass:.12g} on {clause}")
        if clause.frame != m.frame:
            violations.append(f"focal {clause} over a foreign frame")
    return violations


def belief(m: MassFunction, a: Clause) -> float:
    """Bel(a): total mass of focals contained in ``a``."""
    _check_same_frame(m, a)
    return math.fsum(mass for focal, mass in m.items() if clause_subset(focal, a))


def combine(m1: MassFunction, m2: MassFunction) -> CombineOutcome:
    """Dempster's orthogonal sum of two mass functions.

    Masses of pairs with empty intersection form the conflict K, which is
    discarded and renormalized away.
    """
    _check_same_frame(m1, m2)
    products: dict[Clause, list[float]] = {}
    conflict_terms = []
    for a, ma in m1.items():
        for b, mb in m2.items():
            c = clause_intersect(a, b)
            if c is None:
                conflict_terms.append(ma * mb)
            else:
                products.setdefault(c, []).append(ma * mb)
    k = math.fsum(conflict_terms)
    if k >= 1.0 - TOTAL_CONFLICT_TOL:
        raise TotalConflictError(f"total conflict K = {k}")
    scale = 1.0 / (1.0 - k)
    focals = {c: math.fsum(terms) * scale for c, terms in products.items()}
    return CombineOutcome(MassFunction(m1.frame, focals), k)


def combine_all(ms: list[MassFunction]) -> CombineOutcome:
    """Left fold of ``combine``; result is order-independent.

    The aggregate conflict is 1 - prod(1 - K_step) over the fold steps.
    """
    if not ms:
        raise ValueError("combine_all needs at least one mass function")
    acc = ms[0]
    survival = 1.0
    for m in ms[1:]:
        outcome = combine(acc, m)
        acc = outcome.result
        survival *= 1.0 - outcome.conflict
    return CombineOutcome(acc, 1.0 - survival)


# --- text format (shared with the CLI) ---

def parse_mass_text(text: str, frame: Frame | None = None) -> MassFunction:
    """Parse the mass-function text format.

    A ``frame`` line declares the atoms (required unless a frame is passed
    in); each ``focal <clause> <mass>`` line adds one focal element.
    """
    focal_lines: list[tuple[str, float]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "frame":
            if frame is not None:
                raise ParseError(f"line {lineno}: frame declared twice")
            frame = make_frame(fields[1:])
        elif fields[0] == "focal":
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'focal <clause> <mass>'")
            try:
                focal_lines.append((fields[1], float(fields[2])))
            except ValueError:
                raise ParseError(f"line {lineno}: bad mass {fields[2]!r}") from None
        else:
            raise ParseError(f"line {lineno}: unknown directive {fields[0]!r}")
    if frame is None:
        raise ParseError("no frame declared and none supplied")
    focals: dict[Clause, float] = {}
    for clause_text, mass in focal_lines:
        clause = Clause.parse(frame, clause_text)
        focals[clause] = focals.get(clause, 0.0) + mass
    try:
        return MassFunction(frame, focals)
    except NormalizationError as exc:
        raise NormalizationError(f"mass text: {exc}") from None


def format_mass_text(m: MassFunction, include_frame: bool = True) -> str:
    lines = []
    if include_frame:
        lines.append("frame " + " ".join(m.frame.atoms))
    for clause, mass in sorted_focals(m):
        lines.append(f"focal {clause} {mass:.12g}")
    return "\n".join(lines) + "\n"
