"""Extensions of irretractable solutions, decomposition and classification.

Every finite bijective solution is, up to isomorphism, the extension of a
matched-pair solution on ``A×G`` by a set ``X`` and a family of permutations
``φ_a`` of ``X``. Carriers of extensions are indexed row-major over
``X×A×G``: ``(α, a, x) -> (α * |A| + a) * |G| + x``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import AxiomViolation, BoundExceeded
from .finalg import GROUP_ORDER_BOUND, Permutation, enumerate_groups, invert
from .matched import (
    MatchedPair,
    enumerate_matched_pairs,
    extract_matched_pair,
    matched_pair_class,
    matched_pair_iso,
    trivial_matched_pair,
)
from .pesol import (
    SolutionTable,
    idempotents,
    invert_solution,
    is_bijective_solution,
    is_involutive,
    ker_theta,
    owner_idempotent,
    require_bijective_solution,
    verify_pe,
)
from .retract import retract_solution

BRUTE_FORCE_BOUND = 3


@dataclass(frozen=True)
class ExtensionSpec:
    mp: MatchedPair
    x_size: int
    phi: tuple[Permutation, ...]

    def __post_init__(self):
        phi = tuple(p if isinstance(p, Permutation) else Permutation(tuple(p)) for p in self.phi)
        object.__setattr__(self, "phi", phi)
        if self.x_size < 1:
            raise ValueError("x_size must be positive")
        if len(phi) != self.mp.A.order or any(len(p) != self.x_size for p in phi):
            raise ValueError(f"phi needs {self.mp.A.order} permutations of {self.x_size} points")

    @property
    def size(self) -> int:
        return self.x_size * self.mp.size

    def index(self, alpha: int, a: int, x: int) -> int:
        return (alpha * self.mp.A.order + a) * self.mp.G.order + x

    def split(self, i: int) -> tuple[int, int, int]:
        rest, x = divmod(i, self.mp.G.order)
        alpha, a = divmod(rest, self.mp.A.order)
        return alpha, a, x


def trivial_phi(mp: MatchedPair, x_size: int) -> tuple[Permutation, ...]:
    return (Permutation.identity(x_size),) * mp.A.order


def build_extension(spec: ExtensionSpec, star: bool = False) -> SolutionTable:
    """Tabulate the extension of the matched-pair solution by ``X``.

    The ``X``-coordinate of ``θ_{(α,a,x)}(β,b,y)`` is
    ``φ⁻¹_{c}(φ_b(β))`` with ``c = b·δ_x(a)⁻¹``. ``star=True`` drops the
    inverse on the outer map, giving ``φ_c(φ_b(β))``; that variant is kept
    only so its behaviour can be tested.
    """
    mp = spec.mp
    A, G = mp.A, mp.G
    phi = [p.images for p in spec.phi]
    phi_inv = [invert(p).images for p in spec.phi]
    outer = phi if star else phi_inv
    n = spec.size
    mult, theta = [], []
    for i in range(n):
        alpha, a, x = spec.split(i)
        d = mp.delta(x, a)
        dinv = A.inverse[d]
        sd = mp.sigma.act[d].images
        mrow, trow = [], []
        for j in range(n):
            beta, b, y = spec.split(j)
            mrow.append(spec.index(alpha, a, G.product[x][y]))
            c = A.product[b][dinv]
            trow.append(spec.index(outer[c][phi[b][beta]], c, sd[y]))
        mult.append(tuple(mrow))
        theta.append(tuple(trow))
    return SolutionTable(n, tuple(mult), tuple(theta))


def is_isomorphism(s: SolutionTable, t: SolutionTable, f) -> bool:
    """``(f×f)∘s == t∘(f×f)`` on every pair."""
    if s.n != t.n or sorted(f) != list(range(s.n)):
        return False
    for x in range(s.n):
        for y in range(s.n):
            u, v = s(x, y)
            if (f[u], f[v]) != t(f[x], f[y]):
                return False
    return True


def extension_iso_map(mp: MatchedPair, x_size: int, phi, rho) -> Permutation:
    """The isomorphism ``ξ(α,a,x) = (ρ_a⁻¹ φ_a(α), a, x)`` between two extensions.

    The map is checked against both tables before it is returned.
    """
    sp = ExtensionSpec(mp, x_size, tuple(phi))
    sr = ExtensionSpec(mp, x_size, tuple(rho))
    images = []
    for i in range(sp.size):
        alpha, a, x = sp.split(i)
        beta = invert(sr.phi[a])(sp.phi[a](alpha))
        images.append(sr.index(beta, a, x))
    xi = Permutation(tuple(images))
    if not is_isomorphism(build_extension(sp), build_extension(sr), xi.images):
        raise AxiomViolation("extension isomorphism", (), "ξ does not intertwine the two extensions")
    return xi


@dataclass(frozen=True)
class Decomposition:
    """``spec`` together with ``label[u]``, the ``X×A×G`` index of ``u``.

    ``x_elements`` lists ``ker θ ∩ E`` in the order used for ``X``.
    """

    spec: ExtensionSpec
    label: tuple[int, ...]
    x_elements: tuple[int, ...]


def decompose_solution(s: SolutionTable) -> Decomposition:
    """Write a finite bijective solution as an extension of its retract.

    ``X = ker θ ∩ E``; an element ``u`` gets the ``A×G`` label of its retract
    class and the ``α ∈ X`` with ``α∘r = e(u)``, where ``r`` is the chosen
    representative of the class of ``e(u)``. The ``φ`` family is read off the
    ``θ`` maps of elements ``(α, t, 1)`` on ``(β, 1, 1)``.
    """
    require_bijective_solution(s)
    n, circ = s.n, invert_solution(s).circ
    E = set(idempotents(s.mult))
    X = [x for x in ker_theta(s) if x in E]
    xpos = {x: i for i, x in enumerate(X)}
    r = retract_solution(s)
    ex = extract_matched_pair(r.quotient)
    mp = ex.mp
    k = len(X)

    label = []
    for u in range(n):
        e = owner_idempotent(s, u)
        rep = r.section_rep[r.class_of[e]]
        alphas = [al for al in X if circ[al][rep] == e]
        if len(alphas) != 1:
            raise AxiomViolation("decomposition", (u,), "no unique X-coordinate")
        a, x = mp.split(ex.label[r.class_of[u]])
        label.append((xpos[alphas[0]] * mp.A.order + a) * mp.G.order + x)
    if sorted(label) != list(range(n)):
        raise AxiomViolation("decomposition", (), "labelling S -> X×A×G is not a bijection")
    unlabel = [0] * n
    for u, i in enumerate(label):
        unlabel[i] = u

    na, ng = mp.A.order, mp.G.order

    def element(alpha, a, x):
        return unlabel[(alpha * na + a) * ng + x]

    phi = []
    for t_ in range(na):
        tinv = mp.A.inverse[t_]
        eta = [label[s.theta[element(0, tinv, 0)][element(beta, 0, 0)]] // (na * ng) for beta in range(k)]
        phi.append(invert(Permutation(tuple(eta))))
    spec = ExtensionSpec(mp, k, tuple(phi))
    if not is_isomorphism(s, build_extension(spec), label):
        raise AxiomViolation("decomposition", (), "solution differs from the rebuilt extension")
    return Decomposition(spec, tuple(label), tuple(X))


@dataclass(frozen=True, order=True)
class SolutionDescriptor:
    """Isomorphism invariant of a finite bijective solution.

    ``mp_index`` is the position of the matched-pair class in
    ``enumerate_matched_pairs(order_a, order_g)``.
    """

    x_size: int
    order_a: int
    order_g: int
    mp_index: int


def describe(s: SolutionTable) -> SolutionDescriptor:
    d = decompose_solution(s)
    mp = d.spec.mp
    return SolutionDescriptor(d.spec.x_size, mp.A.order, mp.G.order, matched_pair_class(mp))


def _block_key(s: SolutionTable, x: int) -> tuple:
    ident = tuple(range(s.n))
    return (
        s.mult[x][x] == x,
        s.theta[x] == ident,
        Permutation(s.theta[x]).cycle_type() if sorted(s.theta[x]) == list(ident) else tuple(sorted(s.theta[x])),
        tuple(sorted(len([y for y in range(s.n) if s.mult[x][y] == z]) for z in range(s.n))),
    )


def search_isomorphism(s: SolutionTable, t: SolutionTable) -> Optional[Permutation]:
    """Backtracking isomorphism search for arbitrary tables.

    Candidates for ``f(x)`` are restricted to elements with the same
    invariant block; products and ``θ``-images of assigned elements are
    forced and checked as soon as they are known.
    """
    n = s.n
    if t.n != n:
        return None
    ks = [_block_key(s, x) for x in range(n)]
    kt = [_block_key(t, x) for x in range(n)]
    if sorted(ks) != sorted(kt):
        return None
    sm, st, tm, tt = s.mult, s.theta, t.mult, t.theta

    def propagate(f, used, assigned):
        i = 0
        while i < len(assigned):
            u = assigned[i]
            for j in range(i + 1):
                for a, b in ((u, assigned[j]), (assigned[j], u)):
                    for src, dst in ((sm[a][b], tm[f[a]][f[b]]), (st[a][b], tt[f[a]][f[b]])):
                        if f[src] < 0:
                            if used[dst] or ks[src] != kt[dst]:
                                return False
                            f[src] = dst
                            used[dst] = True
                            assigned.append(src)
                        elif f[src] != dst:
                            return False
            i += 1
        return True

    def search(f, used, assigned):
        try:
            x = f.index(-1)
        except ValueError:
            return tuple(f)
        for y in range(n):
            if used[y] or kt[y] != ks[x]:
                continue
            f2, used2, assigned2 = list(f), list(used), list(assigned)
            f2[x] = y
            used2[y] = True
            assigned2.append(x)
            if propagate(f2, used2, assigned2):
                found = search(f2, used2, assigned2)
                if found is not None:
                    return found
        return None

    found = search([-1] * n, [False] * n, [])
    if found is None:
        return None
    assert is_isomorphism(s, t, found)
    return Permutation(found)


def solution_iso(s: SolutionTable, t: SolutionTable) -> Optional[Permutation]:
    """An isomorphism of solutions ``s -> t``, or ``None``.

    Verified bijective inputs are compared through their decompositions and
    the witness is assembled from a matched-pair isomorphism and
    :func:`extension_iso_map`; other inputs go through
    :func:`search_isomorphism`.
    """
    if s.n != t.n:
        return None
    if not (verify_pe(s) and verify_pe(t) and is_bijective_solution(s) and is_bijective_solution(t)):
        return search_isomorphism(s, t)
    ds, dt = decompose_solution(s), decompose_solution(t)
    if ds.spec.x_size != dt.spec.x_size:
        return None
    iso = matched_pair_iso(ds.spec.mp, dt.spec.mp)
    if iso is None:
        return None
    f1, f2 = iso
    mp_s, mp_t, k = ds.spec.mp, dt.spec.mp, ds.spec.x_size
    # (α,a,x) -> (α, f1 a, f2 x) carries φ to φ' with φ'_{f1 a} = φ_a
    moved = [None] * mp_t.A.order
    for a in range(mp_s.A.order):
        moved[f1(a)] = ds.spec.phi[a]
    xi = extension_iso_map(mp_t, k, moved, dt.spec.phi)
    unlabel_t = [0] * t.n
    for u, i in enumerate(dt.label):
        unlabel_t[i] = u
    witness = []
    for u in range(s.n):
        alpha, a, x = ds.spec.split(ds.label[u])
        j = dt.spec.index(alpha, f1(a), f2(x))
        witness.append(unlabel_t[xi(j)])
    if not is_isomorphism(s, t, witness):  # pragma: no cover - guarded by the theory
        return search_isomorphism(s, t)
    return Permutation(tuple(witness))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassifiedSolution:
    descriptor: SolutionDescriptor
    mp: MatchedPair
    representative: SolutionTable


def _cells(n: int) -> Iterable[tuple[int, int, int]]:
    # X-size descending, then |A| descending
    for k in range(n, 0, -1):
        if n % k:
            continue
        m = n // k
        for order_a in range(m, 0, -1):
            if m % order_a == 0:
                yield k, order_a, m // order_a


def classify_order(n: int, bound: int = GROUP_ORDER_BOUND) -> list[ClassifiedSolution]:
    """One representative per isomorphism class of bijective solutions of size ``n``."""
    if not 1 <= n <= bound:
        raise BoundExceeded(f"order {n} outside 1..{bound}")
    out = []
    for k, order_a, order_g in _cells(n):
        for i, mp in enumerate(enumerate_matched_pairs(order_a, order_g)):
            rep = build_extension(ExtensionSpec(mp, k, trivial_phi(mp, k)))
            out.append(ClassifiedSolution(SolutionDescriptor(k, order_a, order_g, i), mp, rep))
    return out


def _is_power_of_two(m: int) -> bool:
    return m & (m - 1) == 0


def classify_involutive(n: int, bound: int = GROUP_ORDER_BOUND) -> list[ClassifiedSolution]:
    """Classes of involutive solutions: elementary abelian 2-groups, trivial actions."""
    if not 1 <= n <= bound:
        raise BoundExceeded(f"order {n} outside 1..{bound}")
    out = []
    for k, order_a, order_g in _cells(n):
        if not (_is_power_of_two(order_a) and _is_power_of_two(order_g)):
            continue
        A = next(g for g in enumerate_groups(order_a) if g.is_elementary_abelian_2())
        G = next(g for g in enumerate_groups(order_g) if g.is_elementary_abelian_2())
        mp = trivial_matched_pair(A, G)
        rep = build_extension(ExtensionSpec(mp, k, trivial_phi(mp, k)))
        out.append(ClassifiedSolution(SolutionDescriptor(k, order_a, order_g, matched_pair_class(mp)), mp, rep))
    return out


def brute_force_solutions(n: int) -> list[SolutionTable]:
    """Every bijection of ``S×S`` satisfying the Pentagon Equation, ``n <= 3``.

    A permutation ``p`` of ``0..n²-1`` is read as
    ``s(x, y) = divmod(p[x*n + y], n)``.
    """
    if not 1 <= n <= BRUTE_FORCE_BOUND:
        raise BoundExceeded(f"brute force is limited to n <= {BRUTE_FORCE_BOUND}")
    out = []
    rows = range(n)
    for p in itertools.permutations(range(n * n)):
        mult = tuple(tuple(p[x * n + y] // n for y in rows) for x in rows)
        theta = tuple(tuple(p[x * n + y] % n for y in rows) for x in rows)
        s = SolutionTable(n, mult, theta)
        if verify_pe(s):
            out.append(s)
    return out


def group_by_isomorphism(solutions: Iterable[SolutionTable]) -> list[list[SolutionTable]]:
    classes: list[list[SolutionTable]] = []
    for s in solutions:
        for cls in classes:
            if solution_iso(s, cls[0]) is not None:
                cls.append(s)
                break
        else:
            classes.append([s])
    return classes


@dataclass(frozen=True)
class OracleReport:
    n: int
    candidates: int
    solutions: int
    classes: int
    expected: int
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def oracle_check(n: int) -> OracleReport:
    """Compare the exhaustive scan against :func:`classify_order` class by class."""
    sols = brute_force_solutions(n)
    classes = group_by_isomorphism(sols)
    catalog = classify_order(n)
    bad = []
    matched = [0] * len(catalog)
    for cls in classes:
        hits = [i for i, c in enumerate(catalog) if solution_iso(cls[0], c.representative) is not None]
        if len(hits) != 1:
            bad.append(f"brute-force class of {cls[0]} matches {len(hits)} catalog entries")
        for i in hits:
            matched[i] += 1
    for i, hit in enumerate(matched):
        if hit != 1:
            bad.append(f"catalog entry {catalog[i].descriptor} matched {hit} brute-force classes")
    return OracleReport(n, math.factorial(n * n), len(sols), len(classes), len(catalog), tuple(bad))


def involutive_filter(catalog: list[ClassifiedSolution]) -> list[ClassifiedSolution]:
    return [c for c in catalog if is_involutive(c.representative)]
