import itertools
import random

import pytest

from conftest import identity_pair_solution, xor_solution, z2_mult_solution
from pentagon.errors import AxiomViolation, BoundExceeded
from pentagon.finalg import (
    Permutation,
    are_isomorphic,
    cyclic_group,
    direct_product,
    enumerate_groups,
    group_name,
    relabel_group,
)
from pentagon.matched import (
    MatchedPair,
    construct_solution,
    enumerate_matched_pairs,
    extract_matched_pair,
    invert_constructed,
    matched_pair_class,
    matched_pair_iso,
    trivial_matched_pair,
    validate_matched_pair,
    zappa_szep,
)
from pentagon.pesol import is_bijective_solution, structure_report, verify_pe
from pentagon.retract import is_irretractable

INV3 = [[0, 1, 2], [0, 2, 1]]  # Z2 acting on Z3 by inversion
TRIV = lambda n, k: [list(range(k))] * n  # noqa: E731


def inversion_pair():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    return validate_matched_pair(z2, z3, INV3, TRIV(3, 2))


def test_validate_examples():
    z2 = cyclic_group(2)
    validate_matched_pair(z2, z2, TRIV(2, 2), TRIV(2, 2))
    inversion_pair()


def test_swap_delta_is_not_a_right_action():
    # δ_x = swap for x != 0 is already not a homomorphism of Z3
    z2, z3 = cyclic_group(2), cyclic_group(3)
    with pytest.raises(AxiomViolation) as exc:
        validate_matched_pair(z2, z3, INV3, [[0, 1], [1, 0], [1, 0]])
    assert exc.value.law == "right action"
    assert exc.value.witness == (1, 1)


def test_sigma_law_violation_witness():
    # the swap is a valid action on the set Z2 but moves the identity
    z2 = cyclic_group(2)
    with pytest.raises(AxiomViolation) as exc:
        validate_matched_pair(z2, z2, [[0, 1], [1, 0]], TRIV(2, 2))
    assert (exc.value.law, exc.value.witness) == ("sigma product law", (1, 0, 0))


def test_sigma_law_violation_with_nontrivial_delta():
    z2, z4 = cyclic_group(2), cyclic_group(4)
    # σ_1 inverts Z4, δ_x swaps for odd x
    with pytest.raises(AxiomViolation) as exc:
        validate_matched_pair(z2, z4, [[0, 1, 2, 3], [0, 3, 2, 1]], [[0, 1], [1, 0], [0, 1], [1, 0]])
    assert (exc.value.law, exc.value.witness) == ("sigma product law", (0, 1, 1))


def test_delta_law_violation():
    # with σ trivial each δ_x must be an automorphism of A; swapping 0 and 1
    # is a valid action on the set Z3 but not an automorphism
    z3, z2 = cyclic_group(3), cyclic_group(2)
    with pytest.raises(AxiomViolation) as exc:
        validate_matched_pair(z3, z2, TRIV(3, 2), [[0, 1, 2], [1, 0, 2]])
    assert exc.value.law == "delta product law"


def test_zappa_szep_examples():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    t = zappa_szep(trivial_matched_pair(z2, z3))
    assert are_isomorphic(t, direct_product(z3, z2))
    s3 = zappa_szep(inversion_pair())
    assert group_name(s3) == "S3"
    one = cyclic_group(1)
    assert zappa_szep(trivial_matched_pair(one, z3)).product == z3.product


def test_zappa_szep_exact_factorisation():
    for na in range(1, 5):
        for ng in range(1, 5):
            for mp in enumerate_matched_pairs(na, ng):
                z = zappa_szep(mp)
                gs = {x * na for x in range(ng)}
                as_ = set(range(na))
                assert gs & as_ == {0}
                for x in gs:
                    for y in gs:
                        assert z.product[x][y] in gs
                for a in as_:
                    for b in as_:
                        assert z.product[a][b] in as_
                # inverse formula
                for x in range(ng):
                    for a in range(na):
                        xinv, ainv = mp.G.inverse[x], mp.A.inverse[a]
                        expect = mp.G.product[0][mp.sigma(ainv, xinv)] * na + mp.delta(xinv, ainv)
                        assert z.inverse[x * na + a] == expect


def test_derived_inverse_laws():
    for na in range(1, 5):
        for ng in range(1, 5):
            for mp in enumerate_matched_pairs(na, ng):
                A, G = mp.A, mp.G
                for a in range(na):
                    for x in range(ng):
                        d = mp.delta(x, a)
                        assert G.inverse[mp.sigma(a, x)] == mp.sigma(d, G.inverse[x])
                        assert A.inverse[d] == mp.delta(mp.sigma(a, x), A.inverse[a])


def test_construct_examples():
    z2, one = cyclic_group(2), cyclic_group(1)
    assert construct_solution(trivial_matched_pair(z2, one)) == xor_solution()
    assert construct_solution(trivial_matched_pair(one, z2)) == z2_mult_solution()
    assert construct_solution(trivial_matched_pair(one, one)) == identity_pair_solution(1)


def test_invert_constructed_examples():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    mp = trivial_matched_pair(z2, z3)
    for a, x, b, y in itertools.product(range(2), range(3), range(2), range(3)):
        (c, u), (d, v) = invert_constructed(mp, (a, x), (b, y))
        assert (c, u, v, d) == (a, z3.product[x][z3.inverse[y]], y, z2.product[b][a])
    mp = trivial_matched_pair(z2, cyclic_group(1))
    for a, b in itertools.product(range(2), repeat=2):
        assert invert_constructed(mp, (a, 0), (b, 0))[1][0] == z2.product[b][a]


def test_invert_constructed_matches_table_inverse():
    for na in range(1, 4):
        for ng in range(1, 4):
            for mp in enumerate_matched_pairs(na, ng):
                s = construct_solution(mp)
                pre = {}
                for i in range(s.n):
                    for j in range(s.n):
                        pre[s(i, j)] = (i, j)
                for i in range(s.n):
                    for j in range(s.n):
                        (c, u), (d, v) = invert_constructed(mp, mp.split(i), mp.split(j))
                        assert pre[(i, j)] == (mp.index(c, u), mp.index(d, v))


def test_extract_examples():
    ex = extract_matched_pair(xor_solution())
    assert ex.mp.A.order == 2 and ex.mp.G.order == 1
    assert ex.mp.sigma.is_trivial() and ex.mp.delta.is_trivial()
    ex = extract_matched_pair(z2_mult_solution())
    assert ex.mp.A.order == 1 and ex.mp.G.order == 2


def test_extract_requires_irretractable():
    with pytest.raises(AxiomViolation) as exc:
        extract_matched_pair(identity_pair_solution(2))
    assert exc.value.law == "irretractable"


def test_extract_on_relabelled_solutions():
    rng = random.Random(2)
    for na, ng in [(2, 3), (3, 2), (4, 2), (2, 4), (4, 4)]:
        for mp in enumerate_matched_pairs(na, ng):
            f = list(range(mp.size))
            rng.shuffle(f)
            s = construct_solution(mp).relabel(f)
            assert matched_pair_iso(extract_matched_pair(s).mp, mp) is not None


def test_matched_pair_iso_examples():
    z2, one = cyclic_group(2), cyclic_group(1)
    p = inversion_pair()
    f1, f2 = matched_pair_iso(p, p)
    assert f1.images == (0, 1) and f2.images == (0, 1, 2)
    assert matched_pair_iso(trivial_matched_pair(z2, one), trivial_matched_pair(one, z2)) is None
    # relabel Z3 by the swap of 1 and 2; inversion commutes with it
    z3 = cyclic_group(3)
    g = relabel_group(z3, [0, 2, 1])
    q = validate_matched_pair(z2, g, INV3, TRIV(3, 2))
    assert matched_pair_iso(p, q) is not None


def _brute_force_cell(A, G):
    """Independent oracle: all maps A -> Sym(G), G -> Sym(A) satisfying the laws,
    deduped by trying every pair of bijections fixing 0."""
    na, ng = A.order, G.order
    ap, gp = A.product, G.product
    symg = list(itertools.permutations(range(ng)))
    syma = list(itertools.permutations(range(na)))
    found = []
    for sig in itertools.product(symg, repeat=na):
        if any(sig[ap[a][b]] != tuple(sig[a][sig[b][x]] for x in range(ng)) for a in range(na) for b in range(na)):
            continue
        if sig[0] != tuple(range(ng)):
            continue
        for dlt in itertools.product(syma, repeat=ng):
            if dlt[0] != tuple(range(na)):
                continue
            if any(dlt[gp[x][y]] != tuple(dlt[y][dlt[x][a]] for a in range(na)) for x in range(ng) for y in range(ng)):
                continue
            ok = all(sig[a][gp[x][y]] == gp[sig[a][x]][sig[dlt[x][a]][y]]
                     for a in range(na) for x in range(ng) for y in range(ng))
            ok = ok and all(dlt[x][ap[a][b]] == ap[dlt[sig[b][x]][a]][dlt[x][b]]
                            for x in range(ng) for a in range(na) for b in range(na))
            if ok:
                found.append((sig, dlt))
    autos_a = [f for f in itertools.permutations(range(na))
               if all(f[ap[a][b]] == ap[f[a]][f[b]] for a in range(na) for b in range(na))]
    autos_g = [f for f in itertools.permutations(range(ng))
               if all(f[gp[x][y]] == gp[f[x]][f[y]] for x in range(ng) for y in range(ng))]
    classes = []
    for sig, dlt in found:
        orbit = set()
        for f1 in autos_a:
            for f2 in autos_g:
                s2 = [None] * na
                d2 = [None] * ng
                for a in range(na):
                    img = [0] * ng
                    for x in range(ng):
                        img[f2[x]] = f2[sig[a][x]]
                    s2[f1[a]] = tuple(img)
                for x in range(ng):
                    img = [0] * na
                    for a in range(na):
                        img[f1[a]] = f1[dlt[x][a]]
                    d2[f2[x]] = tuple(img)
                orbit.add((tuple(s2), tuple(d2)))
        if not any(c in orbit for c in classes):
            classes.append((sig, dlt))
    return len(classes)


@pytest.mark.parametrize("na,ng", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2),
                                   (3, 3), (2, 4), (4, 2), (1, 4), (4, 1)])
def test_enumerate_matched_pairs_against_brute_force(na, ng):
    expected = sum(_brute_force_cell(A, G) for A in enumerate_groups(na) for G in enumerate_groups(ng))
    assert len(enumerate_matched_pairs(na, ng)) == expected


def test_enumerate_matched_pairs_examples():
    assert len(enumerate_matched_pairs(1, 1)) == 1
    assert len(enumerate_matched_pairs(2, 1)) == 1
    assert len(enumerate_matched_pairs(2, 2)) == 1


def test_enumerate_matched_pairs_pairwise_distinct():
    for na in range(1, 5):
        for ng in range(1, 5):
            mps = enumerate_matched_pairs(na, ng)
            for i, p in enumerate(mps):
                assert matched_pair_class(p) == i
                for q in mps[i + 1:]:
                    assert matched_pair_iso(p, q) is None


def test_enumerate_bound():
    with pytest.raises(BoundExceeded):
        enumerate_matched_pairs(9, 1)


def test_construct_properties_small():
    for na in range(1, 5):
        for ng in range(1, 5):
            for mp in enumerate_matched_pairs(na, ng):
                s = construct_solution(mp)
                assert verify_pe(s) and is_bijective_solution(s) and is_irretractable(s)
                assert structure_report(s) == []
                assert isinstance(extract_matched_pair(s).mp, MatchedPair)


def test_extract_labeling_starts_from_one():
    mp = inversion_pair()
    s = construct_solution(mp)
    ex = extract_matched_pair(s)
    assert ex.a_elements[0] == ex.g_elements[0]
    assert sorted(ex.label) == list(range(s.n))
    assert max(Permutation(ex.label).images) == s.n - 1
