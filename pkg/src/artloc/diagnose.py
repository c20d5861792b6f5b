"""Decision procedure: which sufficient condition for a nontrivial
extension-closed module subcategory applies to a given algebra.

Checks run in a fixed precedence order and every applicable condition is
recorded; the primary verdict is the first hit. A hypersurface verdict is
exclusive (triviality rules out the rest)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import AlgebraClass, AlgebraInvariants, LocalAlgebra, Presentation
from .extensions import ClosureVerdict, ext_closure_contains_k
from .modules import betti_numbers, cyclic_module
from .polyparse import Polynomial, normal_form

VERDICT_HYPERSURFACE = "OnlyTrivial_Hypersurface"
VERDICT_PAIR = "Nontrivial_OrthogonalPair"
VERDICT_STRETCHED_GORENSTEIN = "Nontrivial_StretchedGorenstein"
VERDICT_BOUNDED_BETTI = "Nontrivial_BoundedBetti"
VERDICT_GOTO = "Nontrivial_GotoCondition"
VERDICT_NECESSARY_FAIL = "NecessaryConditionsFail"
VERDICT_INCONCLUSIVE = "Inconclusive"


@dataclass
class DiagnosisReport:
    invariants: AlgebraInvariants
    classification: AlgebraClass
    verdict: str
    applicable: list[str]
    pair: Optional[tuple[np.ndarray, np.ndarray]] = None
    bounded_betti_x: Optional[np.ndarray] = None
    bounded_betti_sequence: Optional[list[int]] = None
    goto_variable: Optional[str] = None
    goto_l: Optional[int] = None
    census: Optional[ClosureVerdict] = None
    notes: list[str] = field(default_factory=list)


def scan_bounded_betti(A: LocalAlgebra) -> Optional[np.ndarray]:
    """First minimal generator x with (0:x) = (x), scanning coordinate
    tuples over the non-unit basis as base-p digits of 1, 2, 3, ..."""
    p = A.p
    if A.dim == 1:
        return None
    m2 = A.maxideal().power(2)
    for code in range(1, p ** (A.dim - 1)):
        coords = np.zeros(A.dim, dtype=np.int64)
        k = code
        for i in range(1, A.dim):
            coords[i] = k % p
            k //= p
        if m2.contains(coords):
            continue
        if A.annihilator(coords) == A.principal_ideal(coords):
            return coords
    return None


def goto_check(A: LocalAlgebra, presentation: Presentation) -> Optional[tuple[str, int]]:
    """Syntactic check on the given presentation: a variable v and l >= 1
    with v^(l+1) in the ideal while every relation has order >= l+1.
    The variable order is as presented; no coordinate changes are tried."""
    variables = presentation.variables
    if len(variables) < 2:
        return None
    relations = [r for r in presentation.relations if not r.is_zero()]
    if not relations:
        return None
    min_order = min(r.order() for r in relations)
    groebner = presentation.groebner
    for vi, name in enumerate(variables):
        t = 1
        while t <= A.dim + 1:
            exps = [0] * len(variables)
            exps[vi] = t
            mono = Polynomial(variables, A.p, {tuple(exps): 1})
            if normal_form(mono, groebner).is_zero():
                break
            t += 1
        else:
            continue
        l = t - 1
        if l >= 1 and min_order >= l + 1:
            return name, l
    return None


def diagnose(
    A: LocalAlgebra,
    presentation: Optional[Presentation] = None,
    *,
    depth: int = 3,
    budget: int = 1 << 20,
    seed: int = 0,
    workers: int = 1,
) -> DiagnosisReport:
    if presentation is None:
        presentation = A.presentation
    inv = A.invariants()
    cls = A.classify()
    report = DiagnosisReport(
        invariants=inv,
        classification=cls,
        verdict=VERDICT_INCONCLUSIVE,
        applicable=[],
    )

    if cls.is_hypersurface:
        report.verdict = VERDICT_HYPERSURFACE
        report.applicable = [VERDICT_HYPERSURFACE]
        return report

    pair = A.find_orthogonal_generator_pair()
    if pair is not None:
        report.applicable.append(VERDICT_PAIR)
        report.pair = pair

    if cls.is_stretched and cls.is_gorenstein and inv.edim >= 2:
        report.applicable.append(VERDICT_STRETCHED_GORENSTEIN)

    bb = scan_bounded_betti(A)
    if bb is not None:
        report.applicable.append(VERDICT_BOUNDED_BETTI)
        report.bounded_betti_x = bb
        witness = cyclic_module(A, A.principal_ideal(bb))
        report.bounded_betti_sequence = betti_numbers(witness, 6)

    if presentation is not None:
        hit = goto_check(A, presentation)
        if hit is not None:
            report.applicable.append(VERDICT_GOTO)
            report.goto_variable, report.goto_l = hit
    else:
        report.notes.append("no presentation attached; Goto check skipped")

    if not cls.is_gorenstein:
        report.applicable.append(VERDICT_NECESSARY_FAIL)
        report.notes.append(
            "not Gorenstein: rings with only trivial extension-closed "
            "subcategories must be Gorenstein, so a nontrivial one exists"
        )

    if not report.applicable:
        report.verdict = VERDICT_INCONCLUSIVE
        return report

    report.verdict = report.applicable[0]
    if report.verdict == VERDICT_PAIR:
        report.census = ext_closure_contains_k(
            A, report.pair[0], depth, budget=budget, seed=seed, workers=workers
        )
    if (
        report.verdict == VERDICT_STRETCHED_GORENSTEIN
        and VERDICT_PAIR not in report.applicable
        and VERDICT_BOUNDED_BETTI not in report.applicable
    ):
        report.notes.append("witness over extension field not searched")
    return report
