"""Solution sequences of f = 1 and the brute-force oracle."""

import pytest

from matform import dioph
from matform.catalog import family
from matform.dioph import (
    SearchSpaceTooLarge,
    SeedNotSolution,
    SequenceSpec,
    StepNotSolution,
    brute_force_search,
    check_monotone_positive,
    generate_sequence,
    is_solution,
    simultaneous_is_solution,
)

QUARTIC = family("quartic4x4", (5, -23, 2, -7))
OCTIC = family("octic8x8", (0, -5, 0, -3, 0, -14))

QUARTIC_SEQ = [
    (6, 2, 3, 1),
    (352, 121, 192, 66),
    (22336, 7680, 12215, 4200),
    (1420011, 488257, 776628, 267036),
]

OCTIC_SEQ = [
    (4, 2, 2, 1, 14, 7, 8, 4),
    (12285, 5460, 7092, 3152, 468, 208, 270, 120),
    (578740, 258910, 334134, 149481, 729790, 326485, 421344, 188496),
    (612075793, 273723336, 353382120, 158034240,
     45691800, 20433600, 26380172, 11797344),
]

UV_SEQ = [
    (2, 1, 3, -1, 3, -4),
    (7, 4, 67, 20, 20, -30),
    (26, 15, 459, 525, -255, 459),
    (97, 56, -6240, 3640, -7224, 12577),
]

T4_SEQ = [
    (21, 8, 33, 13),
    (2462, 961, 3983, 1555),
    (294753, 115068, 476920, 186184),
    (35291917, 13777548, 57103521, 22292541),
]

T8_SEQ = [
    (2, 6, 1, 3, 7, 21, 4, 12),
    (13650, 45045, 7880, 26004, 520, 1716, 300, 990),
    (1660070, 5482800, 958437, 3165480,
     2093345, 6913800, 1208592, 3991680),
    (4520236757, 14929326951, 2609759880, 8619450840,
     337438200, 1114482600, 194820028, 643446804),
]


class TestIsSolution:
    def test_reference_solutions(self):
        assert is_solution(QUARTIC, (6, 2, 3, 1))
        assert is_solution(QUARTIC, (1, 0, 0, 0))
        assert is_solution(OCTIC, (4, 2, 2, 1, 14, 7, 8, 4))
        assert not is_solution(QUARTIC, (1, 1, 1, 1))

    def test_accepts_name_and_params(self):
        assert is_solution("quartic4x4", (6, 2, 3, 1), (5, -23, 2, -7))

    def test_simultaneous(self):
        assert simultaneous_is_solution(3, (2, 1, 3, -1, 3, -4))
        assert simultaneous_is_solution(3, (1, 0, 0, 0, 0, 0))
        assert not simultaneous_is_solution(3, (2, 1, 0, 0, 0, 0))


class TestSequences:
    def test_quartic_reference_table(self):
        r = generate_sequence(SequenceSpec(
            family=QUARTIC, seed=(6, 2, 3, 1), step=(6, 2, 3, 1), count=4))
        assert r.solutions == QUARTIC_SEQ
        assert r.verified

    def test_octic_reference_table(self):
        r = generate_sequence(SequenceSpec(
            family=OCTIC, seed=OCTIC_SEQ[0], step=OCTIC_SEQ[0], count=4))
        assert r.solutions == OCTIC_SEQ

    def test_simultaneous_sextic_reference_table(self):
        fam = family("sextic_uv", (3,))
        r = generate_sequence(SequenceSpec(
            family=fam, seed=UV_SEQ[0], step=UV_SEQ[0], count=4))
        assert r.solutions == UV_SEQ
        for v in r.solutions:
            assert simultaneous_is_solution(3, v)

    def test_threefold4x4_reference_table(self):
        fam = family("threefold4x4", (-1, -4, 1, -1, 1, 1))
        e = (1, 0, 0, 0)
        r = generate_sequence(SequenceSpec(
            family=fam, seed=T4_SEQ[0], count=4, mode="triple",
            fixed1=e, fixed2=T4_SEQ[0]))
        assert r.solutions == T4_SEQ

    def test_threefold8x8_reference_table(self):
        fam = family("threefold8x8", (3, -1, 0, -3, 0, -14, 1))
        e = (1, 0, 0, 0, 0, 0, 0, 0)
        r = generate_sequence(SequenceSpec(
            family=fam, seed=T8_SEQ[0], count=4, mode="triple",
            fixed1=e, fixed2=T8_SEQ[0]))
        assert r.solutions == T8_SEQ

    def test_bad_seed_rejected(self):
        with pytest.raises(SeedNotSolution):
            generate_sequence(SequenceSpec(
                family=QUARTIC, seed=(1, 1, 1, 1), step=(6, 2, 3, 1), count=2))

    def test_bad_step_rejected(self):
        with pytest.raises(StepNotSolution):
            generate_sequence(SequenceSpec(
                family=QUARTIC, seed=(6, 2, 3, 1), step=(1, 1, 1, 1), count=2))

    def test_json_wire_format(self):
        r = generate_sequence(SequenceSpec(
            family=QUARTIC, seed=(6, 2, 3, 1), step=(6, 2, 3, 1), count=2))
        obj = r.to_json_obj()
        assert obj["family"] == "quartic4x4"
        assert obj["params"] == ["5", "-23", "2", "-7"]
        assert obj["mode"] == "pairwise"
        assert obj["solutions"][1] == ["352", "121", "192", "66"]
        assert obj["verified"] is True

    def test_deterministic(self):
        spec = SequenceSpec(family=QUARTIC, seed=(6, 2, 3, 1),
                            step=(6, 2, 3, 1), count=4)
        assert generate_sequence(spec).solutions \
            == generate_sequence(spec).solutions


class TestMonotoneReports:
    def test_quartic_sequence_monotone_positive(self):
        rep = check_monotone_positive(QUARTIC_SEQ)
        assert rep.ok and rep.violations == []

    def test_octic_sequence_first_coordinate_grows(self):
        rep = check_monotone_positive(OCTIC_SEQ)
        assert rep.ok

    def test_sextic_system_first_two_coordinates(self):
        rep = check_monotone_positive(UV_SEQ, increasing=(0, 1),
                                      positive=(0, 1))
        assert rep.ok

    def test_sextic_system_not_all_positive(self):
        rep = check_monotone_positive(UV_SEQ)
        assert not rep.ok  # later coordinates go negative

    def test_constant_sequence_flagged(self):
        e = (1, 0, 0, 0)
        rep = check_monotone_positive([e, e])
        assert not rep.ok
        assert any("did not increase" in v for v in rep.violations)


class TestBruteForce:
    def test_quartic_bound_six_contains_references(self):
        found = brute_force_search(QUARTIC, 6)
        assert (1, 0, 0, 0) in found
        assert (6, 2, 3, 1) in found

    def test_lexicographic_order(self):
        found = brute_force_search(QUARTIC, 6)
        assert found == sorted(found)

    def test_oracle_against_independent_enumeration(self):
        # re-enumerate with a different traversal and the printed form
        fam = family("quad2x2", (0, -2))
        found = set(brute_force_search(fam, 3))
        expected = {(x1, x2)
                    for x1 in range(3, -4, -1) for x2 in range(3, -4, -1)
                    if x1 * x1 - 2 * x2 * x2 == 1}
        assert found == expected

    def test_bound_zero_is_empty(self):
        assert brute_force_search(QUARTIC, 0) == []

    def test_custom_target(self):
        fam = family("quad2x2", (0, 1))
        found = brute_force_search(fam, 2, target=4)
        assert (0, 2) in found and (2, 0) in found

    def test_guard(self):
        with pytest.raises(SearchSpaceTooLarge):
            brute_force_search(OCTIC, 100)

    def test_every_result_is_a_solution(self):
        for v in brute_force_search(QUARTIC, 3):
            assert is_solution(QUARTIC, v)
