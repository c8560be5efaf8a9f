"""Matched pairs of groups and the irretractable solutions they carry.

The solution of a matched pair ``(A, G, σ, δ)`` lives on ``A×G`` indexed
row-major, ``(a, x) -> a * |G| + x``, and reads

    s((a,x),(b,y)) = ((a, xy), (b·δ_x(a)⁻¹, σ_{δ_x(a)}(y))).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

from .errors import AxiomViolation, BoundExceeded
from .finalg import (
    GROUP_ORDER_BOUND,
    GroupTable,
    LeftActionTable,
    Permutation,
    RightActionTable,
    enumerate_groups,
    iter_isomorphisms,
    left_actions,
    right_actions,
    trivial_left_action,
    trivial_right_action,
    validate_group,
    validate_left_action,
    validate_right_action,
)
from .pesol import SolutionTable, idempotents, invert_solution, owner_idempotent, require_bijective_solution
from .retract import is_irretractable


@dataclass(frozen=True)
class MatchedPair:
    A: GroupTable
    G: GroupTable
    sigma: LeftActionTable
    delta: RightActionTable

    @property
    def size(self) -> int:
        return self.A.order * self.G.order

    def index(self, a: int, x: int) -> int:
        return a * self.G.order + x

    def split(self, i: int) -> tuple[int, int]:
        return divmod(i, self.G.order)


def _law_violation(A: GroupTable, G: GroupTable, sig, dlt) -> Optional[AxiomViolation]:
    ap, gp = A.product, G.product
    for a in range(A.order):
        for x in range(G.order):
            sa, d = sig[a], dlt[x][a]
            for y in range(G.order):
                if sa[gp[x][y]] != gp[sa[x]][sig[d][y]]:
                    return AxiomViolation("sigma product law", (a, x, y))
    for x in range(G.order):
        dx = dlt[x]
        for a in range(A.order):
            for b in range(A.order):
                if dx[ap[a][b]] != ap[dlt[sig[b][x]][a]][dx[b]]:
                    return AxiomViolation("delta product law", (x, a, b))
    return None


def validate_matched_pair(A: GroupTable, G: GroupTable, sigma, delta) -> MatchedPair:
    """Validate actions and both compatibility laws.

    ``sigma`` is a left action of ``A`` on the ``|G|`` indices of ``G`` and
    ``delta`` a right action of ``G`` on the ``|A|`` indices of ``A``; either
    may be given as an action table or a list of image tables.
    """
    if not isinstance(sigma, LeftActionTable):
        sigma = validate_left_action(A, G.order, sigma)
    else:
        sigma = validate_left_action(A, G.order, sigma.act)
    if not isinstance(delta, RightActionTable):
        delta = validate_right_action(G, A.order, delta)
    else:
        delta = validate_right_action(G, A.order, delta.act)
    sig = [p.images for p in sigma.act]
    dlt = [p.images for p in delta.act]
    bad = _law_violation(A, G, sig, dlt)
    if bad is not None:
        raise bad
    return MatchedPair(A, G, sigma, delta)


def trivial_matched_pair(A: GroupTable, G: GroupTable) -> MatchedPair:
    return MatchedPair(A, G, trivial_left_action(A, G.order), trivial_right_action(G, A.order))


def zappa_szep(mp: MatchedPair) -> GroupTable:
    """The group ``G ⋈ A`` on ``(x, a) -> x * |A| + a`` with
    ``(x,a)(y,b) = (x·σ_a(y), δ_y(a)·b)``."""
    A, G = mp.A, mp.G
    na, ng = A.order, G.order
    table = []
    for i in range(ng * na):
        x, a = divmod(i, na)
        row = []
        for j in range(ng * na):
            y, b = divmod(j, na)
            row.append(G.product[x][mp.sigma(a, y)] * na + A.product[mp.delta(y, a)][b])
        table.append(row)
    try:
        return validate_group(table)
    except AxiomViolation as exc:  # pragma: no cover - impossible for a valid pair
        raise AssertionError(f"Zappa-Szep product is not a group: {exc}") from exc


def construct_solution(mp: MatchedPair) -> SolutionTable:
    A, G = mp.A, mp.G
    ng = G.order
    n = A.order * ng
    ap, gp, ainv = A.product, G.product, A.inverse
    mult, theta = [], []
    for i in range(n):
        a, x = divmod(i, ng)
        d = mp.delta(x, a)
        dinv = ainv[d]
        sd = mp.sigma.act[d].images
        mult.append(tuple(a * ng + gp[x][j % ng] for j in range(n)))
        theta.append(tuple(ap[j // ng][dinv] * ng + sd[j % ng] for j in range(n)))
    return SolutionTable(n, tuple(mult), tuple(theta))


def invert_constructed(mp: MatchedPair, first: tuple[int, int], second: tuple[int, int]):
    """Preimage of ``((a,x),(b,y))`` under the solution of ``mp``."""
    (a, x), (b, y) = first, second
    A, G = mp.A, mp.G
    sa = mp.sigma.act[a]
    sa_inv = _inverse_images(sa.images)
    u = sa_inv[G.product[sa(x)][G.inverse[y]]]
    d = mp.delta(u, a)
    v = _inverse_images(mp.sigma.act[d].images)[y]
    return (a, u), (A.product[b][d], v)


def _inverse_images(p) -> list[int]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return out


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Extraction:
    """Matched pair read off an irretractable solution.

    ``a_elements[i]`` / ``g_elements[j]`` are the carrier elements labelled
    ``i`` in ``mp.A`` and ``j`` in ``mp.G``; ``label[x]`` is the index of
    ``x`` in ``A×G`` (``a * |G| + g``).
    """

    mp: MatchedPair
    label: tuple[int, ...]
    a_elements: tuple[int, ...]
    g_elements: tuple[int, ...]


def _subgroup_table(elements: list[int], op) -> GroupTable:
    pos = {x: i for i, x in enumerate(elements)}
    return validate_group([[pos[op[x][y]] for y in elements] for x in elements])


def extract_matched_pair(s: SolutionTable) -> Extraction:
    """Recover ``(A, G, σ, δ)`` from a finite irretractable bijective solution.

    ``A = 1∘S`` under ``∘`` and ``G = 1·S`` under ``·``, with
    ``σ_a(x) = 1·θ_a(x)`` and ``δ_x(a) = (1∘ψ_{x⁻¹}(a⁻¹))⁻¹``.
    """
    require_bijective_solution(s)
    if not is_irretractable(s):
        raise AxiomViolation("irretractable", (), "solution has a non-trivial retract")
    n, m, t = s.n, s.mult, s.theta
    inv = invert_solution(s)
    circ, psi = inv.circ, inv.psi
    e0 = idempotents(m)[0]
    one = t[e0][e0]

    def ordered(elements):
        rest = sorted(set(elements) - {one})
        return [one] + rest

    a_el = ordered(circ[one][x] for x in range(n))
    g_el = ordered(m[one][x] for x in range(n))
    A = _subgroup_table(a_el, circ)
    G = _subgroup_table(g_el, m)
    apos = {x: i for i, x in enumerate(a_el)}
    gpos = {x: i for i, x in enumerate(g_el)}

    sigma = []
    for a in a_el:
        sigma.append([gpos[m[one][t[a][x]]] for x in g_el])
    delta = []
    for j, x in enumerate(g_el):
        xinv = g_el[G.inverse[j]]
        row = []
        for i, a in enumerate(a_el):
            ainv = a_el[A.inverse[i]]
            row.append(A.inverse[apos[circ[one][psi[xinv][ainv]]]])
        delta.append(row)
    mp = validate_matched_pair(A, G, sigma, delta)

    label = []
    for x in range(n):
        label.append(apos[owner_idempotent(s, x)] * G.order + gpos[m[one][x]])
    if sorted(label) != list(range(n)):
        raise AxiomViolation("extraction", (), "labelling S -> A×G is not a bijection")
    rebuilt = construct_solution(mp)
    for x in range(n):
        for y in range(n):
            if (label[m[x][y]], label[t[x][y]]) != rebuilt(label[x], label[y]):
                raise AxiomViolation("extraction", (x, y), "solution differs from its matched-pair model")
    return Extraction(mp, tuple(label), tuple(a_el), tuple(g_el))


# ---------------------------------------------------------------------------
# isomorphism and enumeration
# ---------------------------------------------------------------------------


def matched_pair_iso(p: MatchedPair, q: MatchedPair) -> Optional[tuple[Permutation, Permutation]]:
    """First pair ``(f1, f2)`` of group isomorphisms intertwining both actions."""
    if p.A.order != q.A.order or p.G.order != q.G.order:
        return None
    f2_list = list(iter_isomorphisms(p.G, q.G))
    if not f2_list:
        return None
    for f1 in iter_isomorphisms(p.A, q.A):
        for f2 in f2_list:
            if _intertwines(p, q, f1.images, f2.images):
                return f1, f2
    return None


def _intertwines(p: MatchedPair, q: MatchedPair, f1, f2) -> bool:
    for a in range(p.A.order):
        sa, qsa = p.sigma.act[a].images, q.sigma.act[f1[a]].images
        for x in range(p.G.order):
            if f2[sa[x]] != qsa[f2[x]]:
                return False
    for x in range(p.G.order):
        dx, qdx = p.delta.act[x].images, q.delta.act[f2[x]].images
        for a in range(p.A.order):
            if f1[dx[a]] != qdx[f1[a]]:
                return False
    return True


@functools.lru_cache(maxsize=None)
def _enumerate_cell(order_a: int, order_g: int) -> tuple[MatchedPair, ...]:
    out: list[MatchedPair] = []
    for A in enumerate_groups(order_a):
        for G in enumerate_groups(order_g):
            cell: list[MatchedPair] = []
            rights = right_actions(G, order_a)
            for sigma in left_actions(A, order_g):
                sig = [p.images for p in sigma.act]
                for delta in rights:
                    dlt = [p.images for p in delta.act]
                    if _law_violation(A, G, sig, dlt) is not None:
                        continue
                    mp = MatchedPair(A, G, sigma, delta)
                    if not any(matched_pair_iso(mp, r) for r in cell):
                        cell.append(mp)
            out.extend(cell)
    return tuple(out)


def enumerate_matched_pairs(order_a: int, order_g: int, bound: int = GROUP_ORDER_BOUND) -> list[MatchedPair]:
    """One matched pair per isomorphism class with ``|A| = order_a``, ``|G| = order_g``.

    Ordered by the group representatives of ``A``, then ``G``, then by the
    enumeration order of ``σ`` and ``δ``.
    """
    for k in (order_a, order_g):
        if not 1 <= k <= bound:
            raise BoundExceeded(f"group order {k} outside 1..{bound}")
    return list(_enumerate_cell(order_a, order_g))


def matched_pair_class(mp: MatchedPair) -> int:
    """Position of ``mp``'s class in :func:`enumerate_matched_pairs`."""
    for i, r in enumerate(enumerate_matched_pairs(mp.A.order, mp.G.order)):
        if matched_pair_iso(mp, r) is not None:
            return i
    raise AssertionError("matched pair missing from the enumeration")
