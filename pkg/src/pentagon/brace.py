"""Skew braces as a source of matched pairs and Pentagon solutions.

A skew brace ``(B, +, ∘)`` carries the left action ``λ_a(b) = -a + a∘b`` and
the right action ``ρ_b(a) = λ_a(b)' ∘ a ∘ b`` of ``(B, ∘)`` on ``B``; with
them ``(B,∘)`` is matched with itself. The compatibility law checked here,
``a∘(b+c) = a∘b - a + a∘c``, is the standard skew-brace axiom.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomViolation, RangeError
from .finalg import GroupTable, validate_group
from .matched import MatchedPair, construct_solution, validate_matched_pair
from .pesol import SolutionTable


@dataclass(frozen=True)
class SkewBraceTable:
    order: int
    add: GroupTable
    circ: GroupTable

    def lam(self, a: int, b: int) -> int:
        return self.add.product[self.add.inverse[a]][self.circ.product[a][b]]

    def rho(self, b: int, a: int) -> int:
        c = self.circ.product
        return c[c[self.circ.inverse[self.lam(a, b)]][a]][b]


def validate_skew_brace(add, circ) -> SkewBraceTable:
    add = add if isinstance(add, GroupTable) else validate_group(add)
    circ = circ if isinstance(circ, GroupTable) else validate_group(circ)
    if add.order != circ.order:
        raise RangeError(f"additive order {add.order} differs from circle order {circ.order}")
    p, c, neg = add.product, circ.product, add.inverse
    n = add.order
    for a in range(n):
        for b in range(n):
            left_part = p[c[a][b]][neg[a]]
            for d in range(n):
                if c[a][p[b][d]] != p[left_part][c[a][d]]:
                    raise AxiomViolation("skew brace compatibility", (a, b, d))
    return SkewBraceTable(n, add, circ)


def trivial_brace(g: GroupTable) -> SkewBraceTable:
    return validate_skew_brace(g, g)


def brace_to_matched_pair(b: SkewBraceTable) -> MatchedPair:
    """``A = G = (B, ∘)`` with ``σ = λ`` and ``δ = ρ``."""
    n = b.order
    sigma = [[b.lam(a, x) for x in range(n)] for a in range(n)]
    delta = [[b.rho(x, a) for a in range(n)] for x in range(n)]
    try:
        return validate_matched_pair(b.circ, b.circ, sigma, delta)
    except AxiomViolation as exc:  # pragma: no cover - a validated brace always matches
        raise AssertionError(f"brace does not yield a matched pair: {exc}") from exc


def brace_to_solution(b: SkewBraceTable) -> SolutionTable:
    return construct_solution(brace_to_matched_pair(b))
