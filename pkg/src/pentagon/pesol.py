"""Solution tables of the set-theoretic Pentagon Equation.

A map ``s: S×S -> S×S`` is stored as two tables with
``s(x, y) == (mult[x][y], theta[x][y])``, i.e. ``mult`` is the product ``x·y``
and ``theta[x]`` is the map ``θ_x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import AxiomViolation, RangeError
from .finalg import GroupTable, Permutation, _as_table, validate_group

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class SolutionTable:
    n: int
    mult: tuple[tuple[int, ...], ...]
    theta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mult = _as_table(self.mult, "mult")
        theta = _as_table(self.theta, "theta")
        if len(mult) != self.n or len(theta) != self.n:
            raise RangeError(f"tables must be {self.n}x{self.n}")
        if self.n < 1:
            raise RangeError("a solution needs a non-empty carrier")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_map(cls, n: int, s) -> "SolutionTable":
        """Tabulate a Python callable ``s(x, y) -> (u, v)``."""
        pairs = [[s(x, y) for y in range(n)] for x in range(n)]
        return cls(n, tuple(tuple(p[0] for p in row) for row in pairs),
                   tuple(tuple(p[1] for p in row) for row in pairs))

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return self.mult[x][y], self.theta[x][y]

    def relabel(self, f) -> "SolutionTable":
        """Transport along the bijection ``f`` (index ``i`` becomes ``f[i]``)."""
        n = self.n
        finv = [0] * n
        for i, j in enumerate(f):
            finv[j] = i
        mult = tuple(tuple(f[self.mult[finv[a]][finv[b]]] for b in range(n)) for a in range(n))
        theta = tuple(tuple(f[self.theta[finv[a]][finv[b]]] for b in range(n)) for a in range(n))
        return SolutionTable(n, mult, theta)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification scan.

    ``law`` and ``witness`` describe the first failure; ``failures`` maps
    every failing law to its own first witness.
    """

    ok: bool
    law: Optional[str] = None
    witness: Optional[tuple] = None
    failures: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        return f"fail {self.law} at {self.witness}"


PASS = Verdict(True)


def identity_solution(n: int) -> SolutionTable:
    """``s(x, y) = (x, y)``."""
    return SolutionTable.from_map(n, lambda x, y: (x, y))


def pe_sides(s: SolutionTable, x: int, y: int, z: int) -> tuple[Triple, Triple]:
    """Evaluate ``s23 s13 s12`` and ``s12 s23`` on one triple, literally."""
    m, t = s.mult, s.theta
    # s12
    a, b, c = m[x][y], t[x][y], z
    # s13
    a, c = m[a][c], t[a][c]
    # s23
    b, c = m[b][c], t[b][c]
    left = (a, b, c)
    # s23 then s12
    p, q = m[y][z], t[y][z]
    right = (m[x][p], t[x][p], q)
    return left, right


def verify_pe(s: SolutionTable) -> Verdict:
    """Compare ``s23 s13 s12`` with ``s12 s23`` on every triple of ``S³``."""
    n = s.n
    m, t = s.mult, s.theta
    for x in range(n):
        mx, tx = m[x], t[x]
        for y in range(n):
            a0, b = mx[y], tx[y]
            ma, ta, mb, tb = m[a0], t[a0], m[b], t[b]
            my, ty = m[y], t[y]
            for z in range(n):
                a, c = ma[z], ta[z]
                p = my[z]
                if a != mx[p] or mb[c] != tx[p] or tb[c] != ty[z]:
                    return Verdict(False, "PE", (x, y, z), {"PE": (x, y, z)})
    return PASS


def verify_kashaev(s: SolutionTable, laws: tuple[str, ...] = ("PE1", "PE2", "PE3")) -> Verdict:
    """Check the three pointwise laws equivalent to the Pentagon Equation.

    PE1: ``x(yz) = (xy)z``; PE2: ``θ_x(y)·θ_{xy}(z) = θ_x(yz)``;
    PE3: ``θ_{θ_x(y)}(θ_{xy}(z)) = θ_y(z)``. Laws are scanned in the given
    order, each over all triples; the verdict's ``law`` is the first failing
    one and ``failures`` lists the first witness for every failing law.
    """
    n = s.n
    m, t = s.mult, s.theta
    checks = {
        "PE1": lambda x, y, z: m[x][m[y][z]] == m[m[x][y]][z],
        "PE2": lambda x, y, z: m[t[x][y]][t[m[x][y]][z]] == t[x][m[y][z]],
        "PE3": lambda x, y, z: t[t[x][y]][t[m[x][y]][z]] == t[y][z],
    }
    failures = {}
    for law in laws:
        check = checks[law]
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if not check(x, y, z):
                        failures[law] = (x, y, z)
                        break
                if law in failures:
                    break
            if law in failures:
                break
    if not failures:
        return PASS
    first = next(iter(failures))
    return Verdict(False, first, failures[first], failures)


def is_bijective_solution(s: SolutionTable) -> bool:
    n = s.n
    seen = set()
    for x in range(n):
        for y in range(n):
            seen.add((s.mult[x][y], s.theta[x][y]))
    return len(seen) == n * n


def is_verified_bijective(s: SolutionTable) -> bool:
    return bool(verify_pe(s)) and is_bijective_solution(s)


def require_bijective_solution(s: SolutionTable) -> None:
    v = verify_pe(s)
    if not v:
        raise AxiomViolation("pentagon equation", v.witness)
    if not is_bijective_solution(s):
        raise AxiomViolation("bijectivity", (), "s is not a bijection of S×S")


def is_involutive(s: SolutionTable) -> bool:
    return all(s(*s(x, y)) == (x, y) for x in range(s.n) for y in range(s.n))


# ---------------------------------------------------------------------------
# inverse solution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InverseData:
    """``s⁻¹(x, y) == (psi[y][x], circ[y][x])``: ``psi[y]`` is ``ψ_y`` and
    ``circ[y][x]`` is ``y∘x``."""

    psi: tuple[tuple[int, ...], ...]
    circ: tuple[tuple[int, ...], ...]


def invert_solution(s: SolutionTable) -> InverseData:
    if not is_bijective_solution(s):
        raise AxiomViolation("bijectivity", (), "s is not a bijection of S×S")
    n = s.n
    psi = [[0] * n for _ in range(n)]
    circ = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            x, y = s(u, v)
            psi[y][x] = u
            circ[y][x] = v
    return InverseData(tuple(map(tuple, psi)), tuple(map(tuple, circ)))


def interplay_failures(s: SolutionTable, inv: InverseData) -> list[str]:
    """Pointwise check of the four identities coming from ``s∘s⁻¹ = s⁻¹∘s = id``."""
    n = s.n
    m, t = s.mult, s.theta
    psi, circ = inv.psi, inv.circ
    bad = []
    for x in range(n):
        for y in range(n):
            if m[psi[y][x]][circ[y][x]] != x:
                bad.append(f"interplay1 at {(x, y)}")
            if t[psi[y][x]][circ[y][x]] != y:
                bad.append(f"interplay2 at {(x, y)}")
            if psi[t[x][y]][m[x][y]] != x:
                bad.append(f"interplay3 at {(x, y)}")
            if circ[t[x][y]][m[x][y]] != y:
                bad.append(f"interplay4 at {(x, y)}")
    return bad


def dual_solution(inv: InverseData) -> SolutionTable:
    """The solution ``t(x, y) = (x∘y, ψ_x(y))`` carried by the inverse data."""
    n = len(inv.circ)
    return SolutionTable(n, inv.circ, inv.psi)


# ---------------------------------------------------------------------------
# left-group structure
# ---------------------------------------------------------------------------


def idempotents(mult) -> list[int]:
    return [x for x in range(len(mult)) if mult[x][x] == x]


@dataclass(frozen=True)
class LeftGroupDecomp:
    """``S ≅ E × e0·S`` with ``(e, g)(f, h) = (e, gh)``.

    ``group_carrier[i]`` is the element of ``e0·S`` labelled ``i`` in
    ``group_part`` (``group_carrier[0] == e0``); ``coord[x] = (e_index, g_index)``
    with ``e_index`` a position in ``idempotents``.
    """

    idempotents: tuple[int, ...]
    base_idempotent: int
    group_carrier: tuple[int, ...]
    group_part: GroupTable
    coord: tuple[tuple[int, int], ...]
    one: int


@dataclass(frozen=True)
class NotLeftGroup:
    reason: str
    witness: tuple = ()

    def __bool__(self) -> bool:
        return False


def decompose_left_group(s: SolutionTable) -> LeftGroupDecomp | NotLeftGroup:
    """Split ``(S,·)`` as a left-zero band of idempotents times a group.

    The base idempotent ``e0`` is the least idempotent index and
    ``one = θ_{e0}(e0)``. Returns :class:`NotLeftGroup` instead of raising,
    so it can be run on arbitrary candidate tables.
    """
    n, m = s.n, s.mult
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if m[x][m[y][z]] != m[m[x][y]][z]:
                    return NotLeftGroup("mult is not associative", (x, y, z))
    E = idempotents(m)
    if not E:
        return NotLeftGroup("no idempotents")
    for e in E:
        for f in E:
            if m[e][f] != e:
                return NotLeftGroup("idempotents are not left zeros", (e, f))
    e0 = E[0]
    carrier = sorted({m[e0][x] for x in range(n)})
    carrier.remove(e0)
    carrier = [e0] + carrier
    pos = {x: i for i, x in enumerate(carrier)}
    table = []
    for a in carrier:
        row = []
        for b in carrier:
            c = m[a][b]
            if c not in pos:
                return NotLeftGroup("e0·S is not closed", (a, b))
            row.append(pos[c])
        table.append(row)
    try:
        group = validate_group(table)
    except AxiomViolation as exc:
        return NotLeftGroup(f"e0·S is not a group with identity e0 ({exc.law})", exc.witness)
    epos = {e: i for i, e in enumerate(E)}
    coord = []
    for x in range(n):
        owners = [e for e in E if m[e][x] == x]
        if len(owners) != 1:
            return NotLeftGroup("no unique idempotent e with ex = x", (x,))
        coord.append((epos[owners[0]], pos[m[e0][x]]))
    if len(set(coord)) != n or len(E) * len(carrier) != n:
        return NotLeftGroup("coordinates are not a bijection onto E × e0·S")
    gp = group.product
    for x in range(n):
        for y in range(n):
            (e, g), (_, h) = coord[x], coord[y]
            if coord[m[x][y]] != (e, gp[g][h]):
                return NotLeftGroup("product is not (e,g)(f,h) = (e,gh)", (x, y))
    return LeftGroupDecomp(tuple(E), e0, tuple(carrier), group, tuple(coord), s.theta[e0][e0])


def theta_row(s: SolutionTable, x: int) -> Permutation:
    """``θ_x`` as a permutation; raises :class:`RangeError` if it is not one."""
    return Permutation(s.theta[x])


def ker_theta(s: SolutionTable) -> list[int]:
    ident = tuple(range(s.n))
    return [x for x in range(s.n) if s.theta[x] == ident]


def owner_idempotent(s: SolutionTable, x: int) -> int:
    """The idempotent ``e`` with ``e·x == x`` (unique in a left group)."""
    m = s.mult
    for e in idempotents(m):
        if m[e][x] == x:
            return e
    raise AxiomViolation("left group", (x,), "no idempotent e with ex = x")


def structure_report(s: SolutionTable) -> list[str]:
    """Run the structural invariants of finite bijective solutions.

    Returns a list of failure messages; an empty list means every check held.
    The input must already satisfy the Pentagon Equation and be bijective.
    """
    bad: list[str] = []
    n, m, t = s.n, s.mult, s.theta
    ident = tuple(range(n))

    for x in range(n):
        if sorted(t[x]) != list(ident):
            bad.append(f"theta_{x} is not bijective")
    if bad:
        return bad

    dec = decompose_left_group(s)
    if not dec:
        return [f"not a left group: {dec.reason} {dec.witness}"]
    E = list(dec.idempotents)
    Eset = set(E)

    for x in range(n):
        for e in E:
            if t[x][e] not in Eset:
                bad.append(f"theta_{x}({e}) is not idempotent")

    # θ_E is a group of permutations with identity θ_{θ_e(e)}
    rows_E = {t[e] for e in E}
    for e in E:
        if t[t[e][e]] != ident:
            bad.append(f"theta at theta_{e}({e}) is not the identity")
    for p in rows_E:
        for q in rows_E:
            if tuple(p[i] for i in q) not in rows_E:
                bad.append("theta_E not closed under composition")
                break
        pinv = [0] * n
        for i, j in enumerate(p):
            pinv[j] = i
        if tuple(pinv) not in rows_E:
            bad.append("theta_E not closed under inverses")
    for x in range(n):
        if t[x] not in rows_E:
            bad.append(f"theta_{x} is not theta_e for an idempotent e")

    one = dec.one
    for g in range(n):
        if m[one][g] == g and t[g] != ident:
            bad.append(f"theta_{g} is not the identity for g in 1·S")

    # the kernel relation of θ_z is independent of z and a left congruence
    def kernel(z):
        row = t[z]
        return frozenset((a, b) for a in range(n) for b in range(n) if row[a] == row[b])

    rel = kernel(0)
    for z in range(1, n):
        if kernel(z) != rel:
            bad.append(f"relation of theta_{z} differs from theta_0")
    for a, b in rel:
        for y in range(n):
            if (m[y][a], m[y][b]) not in rel:
                bad.append(f"~ is not a left congruence at {(a, b, y)}")
                break

    # H_e ⊆ e·S is a subgroup and a ~ b ⇔ aH_e = bH_e
    for e in E:
        eS = sorted({m[e][x] for x in range(n)})
        H = [a for a in eS if (a, e) in rel]
        Hs = set(H)
        if e not in Hs or any(m[a][b] not in Hs for a in H for b in H):
            bad.append(f"H_{e} is not a subgroup")
            continue
        for a in eS:
            for b in eS:
                same = {m[a][h] for h in H} == {m[b][h] for h in H}
                if same != ((a, b) in rel):
                    bad.append(f"cosets of H_{e} do not match ~ at {(a, b)}")

    # left-zero case: θ_x on E is the identity or fixed-point free
    if dec.group_part.order == 1:
        for x in range(n):
            fixed = [e for e in E if t[x][e] == e]
            if fixed and len(fixed) != len(E):
                bad.append(f"theta_{x} on E neither identity nor fixed-point free")

    inv = invert_solution(s)
    bad.extend(interplay_failures(s, inv))

    # ker θ ∩ E = {θ_e(e)} = ker ψ ∩ F, and F = (ker θ ∩ E)·G_1
    K = {x for x in ker_theta(s) if x in Eset}
    if K != {t[e][e] for e in E}:
        bad.append("ker theta ∩ E differs from {theta_e(e)}")
    F = {x for x in range(n) if inv.circ[x][x] == x}
    kerpsi = {x for x in range(n) if inv.psi[x] == ident}
    if K != kerpsi & F:
        bad.append("ker theta ∩ E differs from ker psi ∩ F")
    G1 = {m[one][x] for x in range(n)}
    if F != {m[k][g] for k in K for g in G1}:
        bad.append("F differs from (ker theta ∩ E)·G_1")

    dual = dual_solution(inv)
    if not verify_pe(dual) or not is_bijective_solution(dual):
        bad.append("dual solution (x∘y, psi_x(y)) is not a bijective solution")
    return bad
