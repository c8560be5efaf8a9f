"""Finite-algebra primitives: permutations, group tables and group actions.

Conventions used everywhere in the package:

* elements of a set of size ``n`` are the indices ``0..n-1``;
* every group has its identity at index 0;
* ``compose(p, q)`` applies ``q`` first, so ``compose(p, q)[i] == p[q[i]]``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import AxiomViolation, BoundExceeded, RangeError

GROUP_ORDER_BOUND = 8

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image table."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise RangeError(f"not a permutation: {list(images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def cycle_type(self) -> tuple[int, ...]:
        seen = [False] * len(self.images)
        lengths = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            k, length = start, 0
            while not seen[k]:
                seen[k] = True
                k = self.images[k]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q`` (``q`` is applied first)."""
    if len(p) != len(q):
        raise RangeError(f"cannot compose permutations of sizes {len(p)} and {len(q)}")
    return Permutation(tuple(p.images[i] for i in q.images))


def invert(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, j in enumerate(p.images):
        out[j] = i
    return Permutation(tuple(out))


def _compose_raw(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[i] for i in q)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its multiplication table (identity = 0).

    Build instances through :func:`validate_group`; the constructor does not
    check the group axioms.
    """

    order: int
    product: Table
    inverse: tuple[int, ...]

    def mul(self, x: int, y: int) -> int:
        return self.product[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.product[y][x]
            k += 1
        return k

    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(x) for x in range(self.order))

    def is_abelian(self) -> bool:
        p = self.product
        return all(p[x][y] == p[y][x] for x in range(self.order) for y in range(x))

    def is_elementary_abelian_2(self) -> bool:
        return all(self.product[x][x] == 0 for x in range(self.order))

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.product]


def _as_table(t: Sequence[Sequence[int]], what: str = "table") -> Table:
    try:
        rows = tuple(tuple(int(v) for v in row) for row in t)
    except (TypeError, ValueError) as exc:
        raise RangeError(f"{what}: entries must be integers") from exc
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise RangeError(f"{what}: row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise RangeError(f"{what}: entry ({i},{j})={v} out of range 0..{n - 1}")
    return rows


def validate_group(t: Sequence[Sequence[int]]) -> GroupTable:
    """Check the group axioms with identity at 0 and derive inverses.

    Raises :class:`AxiomViolation` naming the first failing axiom
    (``identity``, ``associativity`` or ``inverse``) and witness, scanning in
    lexicographic order.
    """
    p = _as_table(t, "group table")
    n = len(p)
    if n == 0:
        raise RangeError("group table must be non-empty")
    for x in range(n):
        if p[0][x] != x or p[x][0] != x:
            raise AxiomViolation("identity", (x,), "index 0 is not a two-sided identity")
    for x in range(n):
        px = p[x]
        for y in range(n):
            pxy = p[px[y]]
            py = p[y]
            for z in range(n):
                if pxy[z] != px[py[z]]:
                    raise AxiomViolation("associativity", (x, y, z))
    inverse = []
    for x in range(n):
        for y in range(n):
            if p[x][y] == 0 and p[y][x] == 0:
                inverse.append(y)
                break
        else:
            raise AxiomViolation("inverse", (x,), f"no inverse for {x}")
    return GroupTable(n, p, tuple(inverse))


def cyclic_group(n: int) -> GroupTable:
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Direct product on index ``x * |h| + y``."""
    m = h.order
    size = g.order * m
    return validate_group(
        [
            [g.product[i // m][j // m] * m + h.product[i % m][j % m] for j in range(size)]
            for i in range(size)
        ]
    )


def relabel_group(g: GroupTable, f: Sequence[int]) -> GroupTable:
    """Transport ``g`` along the bijection ``f`` (``f[0]`` must be 0)."""
    n = g.order
    finv = [0] * n
    for i, j in enumerate(f):
        finv[j] = i
    table = [[f[g.product[finv[a]][finv[b]]] for b in range(n)] for a in range(n)]
    return validate_group(table)


def is_homomorphism(g: GroupTable, h: GroupTable, f: Sequence[int]) -> bool:
    return all(
        f[g.product[x][y]] == h.product[f[x]][f[y]]
        for x in range(g.order)
        for y in range(g.order)
    )


def iter_isomorphisms(g: GroupTable, h: GroupTable) -> Iterator[Permutation]:
    """Yield every isomorphism ``g -> h`` in lexicographic order of images."""
    if g.order != h.order:
        return
    n = g.order
    go, ho = g.element_orders(), h.element_orders()
    if sorted(go) != sorted(ho):
        return
    gp, hp = g.product, h.product

    def propagate(f, used, assigned):
        # closes the assigned set under products; f stays multiplicative on it
        i = 0
        while i < len(assigned):
            u = assigned[i]
            for j in range(i + 1):
                for a, b in ((u, assigned[j]), (assigned[j], u)):
                    w, t = gp[a][b], hp[f[a]][f[b]]
                    if f[w] < 0:
                        if used[t] or go[w] != ho[t]:
                            return False
                        f[w] = t
                        used[t] = True
                        assigned.append(w)
                    elif f[w] != t:
                        return False
            i += 1
        return True

    def search(f, used, assigned):
        try:
            x = f.index(-1)
        except ValueError:
            yield Permutation(tuple(f))
            return
        for y in range(n):
            if used[y] or ho[y] != go[x]:
                continue
            f2, used2, assigned2 = list(f), list(used), list(assigned)
            f2[x] = y
            used2[y] = True
            assigned2.append(x)
            if propagate(f2, used2, assigned2):
                yield from search(f2, used2, assigned2)

    f = [-1] * n
    used = [False] * n
    f[0] = 0
    used[0] = True
    yield from search(f, used, [0])


def group_isomorphisms(g: GroupTable, h: GroupTable) -> list[Permutation]:
    return list(iter_isomorphisms(g, h))


def are_isomorphic(g: GroupTable, h: GroupTable) -> bool:
    return next(iter_isomorphisms(g, h), None) is not None


def _all_group_tables(n: int) -> list[Table]:
    """Every group table on ``0..n-1`` with identity 0.

    Rows are chosen as permutations; once rows ``i`` and ``j`` are known,
    associativity forces row ``i*j`` to be ``row_i ∘ row_j``, which prunes
    the search to a handful of branch points.
    """
    found: list[Table] = []

    def close(rows):
        changed = True
        while changed:
            changed = False
            known = [i for i in range(n) if rows[i] is not None]
            for i in known:
                ri = rows[i]
                for j in known:
                    rj = rows[j]
                    k = ri[j]
                    req = tuple(ri[v] for v in rj)
                    if rows[k] is None:
                        rows[k] = req
                        changed = True
                    elif rows[k] != req:
                        return False
        known = [r for r in rows if r is not None]
        for c in range(n):
            if len({r[c] for r in known}) != len(known):
                return False
        return True

    def candidate_rows(rows, r):
        known = [row for row in rows if row is not None]
        banned = [{row[c] for row in known} for c in range(n)]
        row = [r] + [0] * (n - 1)
        used = {r}

        def fill(c):
            if c == n:
                yield tuple(row)
                return
            for v in range(n):
                if v not in used and v not in banned[c]:
                    row[c] = v
                    used.add(v)
                    yield from fill(c + 1)
                    used.discard(v)

        yield from fill(1)

    def search(rows):
        if all(r is not None for r in rows):
            found.append(tuple(rows))
            return
        r = rows.index(None)
        for cand in candidate_rows(rows, r):
            trial = list(rows)
            trial[r] = cand
            if close(trial):
                search(trial)

    rows = [None] * n
    rows[0] = tuple(range(n))
    search(rows)
    return found


@functools.lru_cache(maxsize=None)
def _enumerate_groups_cached(n: int) -> tuple[GroupTable, ...]:
    reps: list[GroupTable] = []
    for table in sorted(_all_group_tables(n)):
        g = validate_group(table)
        if not any(are_isomorphic(g, r) for r in reps):
            reps.append(g)
    return tuple(reps)


def enumerate_groups(order: int, bound: int = GROUP_ORDER_BOUND) -> list[GroupTable]:
    """One group per isomorphism class, each the lexicographically least table.

    Representatives are returned in increasing lexicographic order of tables.
    """
    if not 1 <= order <= bound:
        raise BoundExceeded(f"group order {order} outside 1..{bound}")
    return list(_enumerate_groups_cached(order))


_NAMES = {
    (1, (1,)): "C1",
    (2, (1, 2)): "C2",
    (3, (1, 3, 3)): "C3",
    (4, (1, 2, 4, 4)): "C4",
    (4, (1, 2, 2, 2)): "C2xC2",
    (5, (1, 5, 5, 5, 5)): "C5",
    (6, (1, 2, 3, 3, 6, 6)): "C6",
    (6, (1, 2, 2, 2, 3, 3)): "S3",
    (7, (1,) + (7,) * 6): "C7",
    (8, (1, 2, 4, 4, 8, 8, 8, 8)): "C8",
    (8, (1, 2, 2, 2, 4, 4, 4, 4)): "C2xC4",
    (8, (1,) + (2,) * 7): "C2^3",
    (8, (1, 2, 2, 2, 2, 2, 4, 4)): "D4",
    (8, (1, 2, 4, 4, 4, 4, 4, 4)): "Q8",
}


def group_name(g: GroupTable) -> str:
    """Short human-readable name, exact for orders up to 8."""
    key = (g.order, tuple(sorted(g.element_orders())))
    return _NAMES.get(key, f"G{g.order}")


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeftActionTable:
    """``act[h1*h2] == compose(act[h1], act[h2])``."""

    actor: GroupTable
    target_size: int
    act: tuple[Permutation, ...]

    def __call__(self, h: int, i: int) -> int:
        return self.act[h].images[i]

    def is_trivial(self) -> bool:
        return all(p.is_identity() for p in self.act)


@dataclass(frozen=True)
class RightActionTable:
    """``act[x*y] == compose(act[y], act[x])``."""

    actor: GroupTable
    target_size: int
    act: tuple[Permutation, ...]

    def __call__(self, h: int, i: int) -> int:
        return self.act[h].images[i]

    def is_trivial(self) -> bool:
        return all(p.is_identity() for p in self.act)


def _as_perms(actor: GroupTable, target_size: int, perms) -> tuple[Permutation, ...]:
    perms = tuple(p if isinstance(p, Permutation) else Permutation(tuple(p)) for p in perms)
    if len(perms) != actor.order:
        raise RangeError(f"action has {len(perms)} maps for a group of order {actor.order}")
    for h, p in enumerate(perms):
        if len(p) != target_size:
            raise RangeError(f"action map {h} acts on {len(p)} points, expected {target_size}")
    return perms


def validate_left_action(actor: GroupTable, target_size: int, perms) -> LeftActionTable:
    perms = _as_perms(actor, target_size, perms)
    if not perms[0].is_identity():
        raise AxiomViolation("action identity", (0,), "act[0] is not the identity")
    for h1 in range(actor.order):
        for h2 in range(actor.order):
            if perms[actor.product[h1][h2]].images != _compose_raw(perms[h1].images, perms[h2].images):
                raise AxiomViolation("left action", (h1, h2))
    return LeftActionTable(actor, target_size, perms)


def validate_right_action(actor: GroupTable, target_size: int, perms) -> RightActionTable:
    perms = _as_perms(actor, target_size, perms)
    if not perms[0].is_identity():
        raise AxiomViolation("action identity", (0,), "act[0] is not the identity")
    for x in range(actor.order):
        for y in range(actor.order):
            if perms[actor.product[x][y]].images != _compose_raw(perms[y].images, perms[x].images):
                raise AxiomViolation("right action", (x, y))
    return RightActionTable(actor, target_size, perms)


def trivial_left_action(actor: GroupTable, target_size: int) -> LeftActionTable:
    return validate_left_action(actor, target_size, [Permutation.identity(target_size)] * actor.order)


def trivial_right_action(actor: GroupTable, target_size: int) -> RightActionTable:
    return validate_right_action(actor, target_size, [Permutation.identity(target_size)] * actor.order)


def _perm_order(p: tuple[int, ...]) -> int:
    k, q = 1, p
    ident = tuple(range(len(p)))
    while q != ident:
        q = _compose_raw(p, q)
        k += 1
    return k


@functools.lru_cache(maxsize=None)
def _sym(k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(k)))


def _action_maps(actor: GroupTable, k: int, right: bool) -> Iterator[tuple[tuple[int, ...], ...]]:
    n = actor.order
    gp = actor.product
    orders = actor.element_orders()
    sym = _sym(k)
    perm_orders = {p: _perm_order(p) for p in sym} if n > 1 else {}

    def propagate(imgs, assigned):
        i = 0
        while i < len(assigned):
            u = assigned[i]
            for j in range(i + 1):
                for a, b in ((u, assigned[j]), (assigned[j], u)):
                    w = gp[a][b]
                    t = _compose_raw(imgs[b], imgs[a]) if right else _compose_raw(imgs[a], imgs[b])
                    if imgs[w] is None:
                        imgs[w] = t
                        assigned.append(w)
                    elif imgs[w] != t:
                        return False
            i += 1
        return True

    def search(imgs, assigned):
        try:
            x = imgs.index(None)
        except ValueError:
            yield tuple(imgs)
            return
        for p in sym:
            if orders[x] % perm_orders[p]:
                continue
            imgs2, assigned2 = list(imgs), list(assigned)
            imgs2[x] = p
            assigned2.append(x)
            if propagate(imgs2, assigned2):
                yield from search(imgs2, assigned2)

    images = [None] * n
    images[0] = tuple(range(k))
    yield from search(images, [0])


def left_actions(actor: GroupTable, target_size: int) -> list[LeftActionTable]:
    """All left actions of ``actor`` on ``target_size`` points, deterministic order."""
    return [
        LeftActionTable(actor, target_size, tuple(Permutation(p) for p in maps))
        for maps in _action_maps(actor, target_size, right=False)
    ]


def right_actions(actor: GroupTable, target_size: int) -> list[RightActionTable]:
    """All right actions of ``actor`` on ``target_size`` points, deterministic order."""
    return [
        RightActionTable(actor, target_size, tuple(Permutation(p) for p in maps))
        for maps in _action_maps(actor, target_size, right=True)
    ]
