from fractions import Fraction as F

from sfarey.farey import h_value
from sfarey.identities import (
    check_height_transfer,
    check_neighbour_identities,
    check_mediant_height,
    neighbour_identity_violation,
    neighbour_pairs,
)

from oracles import farey_pairs


def test_neighbour_pairs_match_scan():
    expected = set()
    for Q in range(1, 41):
        fr = farey_pairs(Q)
        expected |= {(a1, q1, a2, q2) for (a1, q1), (a2, q2) in zip(fr, fr[1:])}
    got = [tuple(row) for row in neighbour_pairs(40).tolist()]
    assert got == sorted(expected)


def test_neighbour_identities_exhaustive_to_500():
    assert check_neighbour_identities(500) is None


def test_identities_detect_a_non_neighbour_pair():
    assert neighbour_identity_violation(1, 3, 3, 5) is not None
    assert neighbour_identity_violation(1, 3, 2, 5) is None


def test_inverse_from_denominators():
    # inverse of a1 mod q1 from the two denominators alone
    for a1, q1, a2, q2 in neighbour_pairs(80).tolist():
        if 0 < a1 < q1 and 0 < a2 < q2:
            assert a1 * ((1 + q2 // q1) * q1 - q2) % q1 == 1


def test_height_transfer_exhaustive_to_500():
    assert check_height_transfer(500) is None


def test_height_transfer_direct_small():
    for Q in range(2, 60):
        fr = farey_pairs(Q)
        for (a1, q1), (a2, q2) in zip(fr, fr[1:]):
            h1, h2 = h_value(F(a1, q1)), h_value(F(a2, q2))
            if q1 < q2:
                assert h2 > Q
            if q2 < q1 and h1 <= Q:
                assert h2 <= Q


def test_mediant_born_after_parents():
    assert check_mediant_height(500) is None
