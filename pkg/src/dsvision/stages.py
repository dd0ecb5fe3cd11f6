"""The three-stage window verification chain.

Stage A combines the four single-feature supports and verifies them against
the window knowledge source.  Stage B folds in sibling alignment evidence,
stage C adds the conflicting non-window evidence from the building-boundary
check.  Each stage re-injects the previous stage's belief as a simple
support, so the stages can also run standalone on bare numbers (the
tabulated-fixture path).
"""

from __future__ import annotations

from .evidence import Clause, Frame, MassFunction, combine_all, make_frame, simple_support
from .knowledge import KnowledgeSource, verify

FEATURE_ATOMS = ("elong", "text", "lt-bound", "rt-bound")
SIBLING_ATOMS = ("window", "v-sibl", "h-sibl")

FEATURE_FRAME = make_frame(FEATURE_ATOMS)
SIBLING_FRAME = make_frame(SIBLING_ATOMS)


def window_knowledge() -> KnowledgeSource:
    """Knowledge about window appearance: boundaries are the most
    convincing evidence, either side will do."""
    return KnowledgeSource.build("window", FEATURE_FRAME, {
        "elong": 0.15,
        "text": 0.20,
        "lt-bound|rt-bound": 0.35,
        "THETA": 0.30,
    })


def sibling_knowledge() -> KnowledgeSource:
    """Knowledge about window placement in a facade; judged certain, so no
    residual is kept on theta."""
    return KnowledgeSource.build("window", SIBLING_FRAME, {
        "window": 0.4,
        "v-sibl": 0.2,
        "h-sibl": 0.2,
        "v-sibl&h-sibl": 0.2,
    })


def _supports(frame: Frame, values: dict[str, float]) -> list[MassFunction]:
    return [
        simple_support(frame, Clause.conjunction(frame, [atom]), s)
        for atom, s in values.items()
    ]


def stage_a_belief(elong: float, text: float, lt: float, rt: float,
                   window_ks: KnowledgeSource | None = None) -> float:
    """Belief in the window hypothesis from shape/texture/boundary evidence."""
    ks = window_ks if window_ks is not None else window_knowledge()
    evidence = combine_all(_supports(ks.frame, {
        "elong": elong, "text": text, "lt-bound": lt, "rt-bound": rt,
    })).result
    return verify(evidence, ks).bel


def stage_b_belief(window: float, v_sibl: float, h_sibl: float,
                   sibling_ks: KnowledgeSource | None = None) -> float:
    """Belief after the lateral sibling search."""
    ks = sibling_ks if sibling_ks is not None else sibling_knowledge()
    evidence = combine_all(_supports(ks.frame, {
        "window": window, "v-sibl": v_sibl, "h-sibl": h_sibl,
    })).result
    return verify(evidence, ks).bel


def stage_c_belief(window: float, non_window: float, v_sibl: float, h_sibl: float,
                   sibling_ks: KnowledgeSource | None = None) -> float:
    """Belief after combining the conflicting non-window evidence.

    The window and non-window supports collide head on; Dempster
    normalization absorbs the conflict before the sibling verification.
    """
    ks = sibling_ks if sibling_ks is not None else sibling_knowledge()
    frame = ks.frame
    ms = _supports(frame, {
        "window": window, "v-sibl": v_sibl, "h-sibl": h_sibl,
    })
    ms.insert(1, simple_support(
        frame, Clause.conjunction(frame, ["!window"]), non_window))
    evidence = combine_all(ms).result
    return verify(evidence, ks).bel
