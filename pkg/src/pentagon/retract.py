"""The retract of a finite bijective solution and irretractability."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import AxiomViolation
from .pesol import (
    SolutionTable,
    idempotents,
    is_bijective_solution,
    owner_idempotent,
    require_bijective_solution,
    verify_pe,
)


@dataclass(frozen=True)
class RetractResult:
    class_of: tuple[int, ...]
    quotient: SolutionTable
    section_rep: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.quotient.n


def retract_key(s: SolutionTable, x: int) -> tuple:
    """Key of ``x = e·g`` under ``eg ≈ fh ⇔ θ_e = θ_f and g = h``.

    ``g = 1·x`` with ``1 = θ_{e0}(e0)`` for the least idempotent ``e0``.
    """
    e0 = idempotents(s.mult)[0]
    one = s.theta[e0][e0]
    return s.theta[owner_idempotent(s, x)], s.mult[one][x]


def retract_solution(s: SolutionTable) -> RetractResult:
    """Quotient by the retract congruence, classes numbered by least member."""
    require_bijective_solution(s)
    n, m, t = s.n, s.mult, s.theta
    E = idempotents(m)
    one = t[E[0]][E[0]]
    owner = {}
    for e in E:
        for x in range(n):
            if m[e][x] == x:
                owner[x] = e
    labels: dict[tuple, int] = {}
    class_of = []
    reps = []
    for x in range(n):
        key = (t[owner[x]], m[one][x])
        if key not in labels:
            labels[key] = len(labels)
            reps.append(x)
        class_of.append(labels[key])

    # θ_x = θ_y together with 1·x = 1·y gives the same partition
    for x in range(n):
        r = reps[class_of[x]]
        if t[x] != t[r]:
            raise AxiomViolation("retract", (x, r), "theta rows differ inside a class")

    k = len(reps)
    qm = [[class_of[m[reps[c]][reps[d]]] for d in range(k)] for c in range(k)]
    qt = [[class_of[t[reps[c]][reps[d]]] for d in range(k)] for c in range(k)]
    for x in range(n):
        for y in range(n):
            c, d = class_of[x], class_of[y]
            if class_of[m[x][y]] != qm[c][d] or class_of[t[x][y]] != qt[c][d]:
                raise AxiomViolation("representative independence", (x, y))
    quotient = SolutionTable(k, tuple(map(tuple, qm)), tuple(map(tuple, qt)))
    if not verify_pe(quotient) or not is_bijective_solution(quotient):
        raise AxiomViolation("retract", (), "quotient is not a bijective solution")
    return RetractResult(tuple(class_of), quotient, tuple(reps))


def is_irretractable(s: SolutionTable) -> bool:
    """Exactly one idempotent has ``θ_e = id``."""
    ident = tuple(range(s.n))
    return sum(1 for e in idempotents(s.mult) if s.theta[e] == ident) == 1


def projection_is_homomorphism(s: SolutionTable, r: RetractResult) -> Optional[tuple[int, int]]:
    """Return the first pair where ``(π×π)∘s != s̄∘(π×π)``, or ``None``."""
    pi, q = r.class_of, r.quotient
    for x in range(s.n):
        for y in range(s.n):
            u, v = s(x, y)
            if (pi[u], pi[v]) != q(pi[x], pi[y]):
                return (x, y)
    return None
