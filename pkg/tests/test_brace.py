import pytest

from pentagon.brace import (
    brace_to_matched_pair,
    brace_to_solution,
    trivial_brace,
    validate_skew_brace,
)
from pentagon.errors import AxiomViolation, RangeError
from pentagon.finalg import _all_group_tables, cyclic_group, enumerate_groups, group_name
from pentagon.matched import _law_violation, construct_solution, matched_pair_iso, trivial_matched_pair
from pentagon.pesol import is_bijective_solution, verify_pe
from pentagon.retract import is_irretractable

XOR = [[0, 1], [1, 0]]
KLEIN = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
Z4 = [[(a + b) % 4 for b in range(4)] for a in range(4)]
# a∘b = a + b + 2ab on Z4; this is exactly the XOR table
Z4_TWISTED = [[(a + b + 2 * a * b) % 4 for b in range(4)] for a in range(4)]
# cyclic circle group over the Klein additive group
KLEIN_C4 = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]]

NONTRIVIAL_ORDER_4 = [(Z4, Z4_TWISTED), (KLEIN, KLEIN_C4)]


def test_trivial_brace_z2():
    b = validate_skew_brace(XOR, XOR)
    mp = brace_to_matched_pair(b)
    assert mp.sigma.is_trivial() and mp.delta.is_trivial()
    z2 = cyclic_group(2)
    assert matched_pair_iso(mp, trivial_matched_pair(z2, z2)) is not None
    s = brace_to_solution(b)
    assert s.n == 4 and verify_pe(s) and is_bijective_solution(s)


def test_trivial_brace_z3_and_one_point():
    mp = brace_to_matched_pair(trivial_brace(cyclic_group(3)))
    assert mp.sigma.is_trivial() and mp.delta.is_trivial()
    s = brace_to_solution(trivial_brace(cyclic_group(1)))
    assert s.n == 1 and verify_pe(s)


def test_mismatched_identities_rejected():
    # Klein four with identity at index 1
    shifted = [[KLEIN[a ^ 1][b ^ 1] ^ 1 for b in range(4)] for a in range(4)]
    with pytest.raises(AxiomViolation) as exc:
        validate_skew_brace(Z4, shifted)
    assert exc.value.law == "identity"


def test_size_mismatch():
    with pytest.raises(RangeError):
        validate_skew_brace(XOR, Z4)


def test_twisted_circle_is_xor():
    assert Z4_TWISTED == KLEIN


def test_compatibility_violation():
    with pytest.raises(AxiomViolation) as exc:
        validate_skew_brace(Z4, KLEIN_C4)
    assert exc.value.law == "skew brace compatibility"
    assert exc.value.witness == (2, 1, 1)


@pytest.mark.parametrize("add,circ", NONTRIVIAL_ORDER_4)
def test_nontrivial_order_four(add, circ):
    b = validate_skew_brace(add, circ)
    mp = brace_to_matched_pair(b)
    assert not mp.sigma.is_trivial()
    n = b.order
    for a in range(n):
        for x in range(n):
            assert mp.sigma(a, x) == b.add.product[b.add.inverse[a]][b.circ.product[a][x]]
            lam = mp.sigma(a, x)
            expect = b.circ.product[b.circ.product[b.circ.inverse[lam]][a]][x]
            assert mp.delta(x, a) == expect
    s = brace_to_solution(b)
    assert verify_pe(s) and is_bijective_solution(s) and is_irretractable(s)


def test_named_circle_groups():
    assert group_name(validate_skew_brace(Z4, Z4_TWISTED).circ) == "C2xC2"
    assert group_name(validate_skew_brace(KLEIN, KLEIN_C4).circ) == "C4"


def test_all_braces_up_to_order_six():
    """Every skew brace with a representative additive group, order <= 6."""
    count = 0
    for n in range(1, 7):
        tables = _all_group_tables(n)
        for add in enumerate_groups(n):
            for circ in tables:
                try:
                    b = validate_skew_brace(add, circ)
                except AxiomViolation:
                    continue
                count += 1
                mp = brace_to_matched_pair(b)
                sig = [p.images for p in mp.sigma.act]
                dlt = [p.images for p in mp.delta.act]
                assert _law_violation(mp.A, mp.G, sig, dlt) is None
                s = brace_to_solution(b)
                assert s == construct_solution(mp)
                assert verify_pe(s) and is_irretractable(s)
    assert count == 20
