import itertools

import pytest

from dimsolve.analysis import (
    AnalysisUsageError,
    Recurrence,
    branching_factor,
    combine,
    covers,
    load_catalogue,
    worst_factor,
)


class TestRecurrence:
    def test_parse_and_render(self):
        r = Recurrence.parse("16, 12,10,6")
        assert r.decrements == (16, 12, 10, 6)
        assert str(r) == "{16,12,10,6}"
        assert len(r) == 4

    def test_key_ignores_order(self):
        assert Recurrence.of(4, 8).key == Recurrence.of(8, 4).key == (8, 4)

    @pytest.mark.parametrize("text", ["", "a,b", "3,0", "-1,4"])
    def test_parse_errors(self, text):
        with pytest.raises(AnalysisUsageError):
            Recurrence.parse(text)

    def test_of_needs_a_branch(self):
        with pytest.raises(AnalysisUsageError):
            Recurrence.of()


class TestBranchingFactor:
    def test_two_eight(self):
        assert branching_factor(Recurrence.of(2, 8)) == pytest.approx(1.1749, abs=1e-4)

    def test_worst_step(self):
        assert branching_factor(Recurrence.of(16, 12, 10, 6)) == pytest.approx(1.1467, abs=1e-4)

    def test_exact_bracket_end(self):
        assert branching_factor(Recurrence.of(1, 1)) == 2.0

    def test_single_branch(self):
        assert branching_factor(Recurrence.of(5)) == 1.0

    def test_symmetric_closed_form(self):
        assert branching_factor(Recurrence.of(6, 6)) == pytest.approx(2 ** (1 / 6), abs=1e-12)

    def test_root_residual(self):
        for entry in load_catalogue():
            alpha = branching_factor(entry.recurrence)
            assert sum(alpha ** (-a) for a in entry.decrements) == pytest.approx(1.0, abs=1e-9)

    def test_larger_decrements_lower_the_factor(self):
        assert branching_factor(Recurrence.of(8, 5)) < branching_factor(Recurrence.of(8, 4))
        assert branching_factor(Recurrence.of(9, 4)) < branching_factor(Recurrence.of(8, 4))


class TestCovers:
    def test_direct_spread(self):
        assert covers(Recurrence.of(6, 6), Recurrence.of(8, 4))
        assert covers(Recurrence.of(6, 6), Recurrence.of(9, 3))

    def test_reflexive(self):
        assert covers(Recurrence.of(3, 9), Recurrence.of(9, 3))

    def test_not_reversed(self):
        assert not covers(Recurrence.of(8, 4), Recurrence.of(6, 6))

    def test_lengths_must_match(self):
        assert not covers(Recurrence.of(2, 8), Recurrence.of(16, 12, 10, 6))

    def test_two_step_chain(self):
        a, b = Recurrence.of(6, 6, 6), Recurrence.of(8, 8, 2)
        assert covers(a, b)
        assert not covers(a, b, max_depth=1)

    def test_covered_recurrences_branch_no_worse(self):
        rs = [e.recurrence for e in load_catalogue()]
        checked = 0
        for a, b in itertools.permutations(rs, 2):
            if covers(a, b):
                checked += 1
                assert branching_factor(a) <= branching_factor(b) + 1e-12, (str(a), str(b))
        assert checked > 0


class TestCombine:
    def test_designated_branch(self):
        r = combine(Recurrence.of(2, 8), Recurrence.of(8, 4), first=2)
        assert r.key == (10, 8, 6)

    def test_chain_to_the_worst_step(self):
        inner = combine(Recurrence.of(2, 8), Recurrence.of(8, 4))
        assert combine(inner, Recurrence.of(8, 4), first=8).key == (16, 12, 10, 6)

    def test_unknown_branch(self):
        with pytest.raises(AnalysisUsageError):
            combine(Recurrence.of(2, 8), Recurrence.of(8, 4), first=3)

    def test_combining_never_helps_the_split_branch(self):
        x, y = Recurrence.of(3, 8), Recurrence.of(6, 6)
        assert branching_factor(combine(x, y)) < branching_factor(x)


class TestCatalogue:
    def test_load(self):
        entries = load_catalogue()
        assert len(entries) == 25
        assert {e.step for e in entries} == {"5a", "5b", "5c", "5d", "5e", "5f"}
        assert len(load_catalogue(intermediate=False)) == 22

    def test_intermediate_entries(self):
        steps = {e.recurrence.key: e.step for e in load_catalogue() if e.intermediate}
        assert steps == {(9, 2): "5d", (8, 2): "5e", (10, 2): "5e"}

    def test_intermediate_entries_build_the_final_ones(self):
        final = {e.recurrence.key for e in load_catalogue(intermediate=False)}
        by_key = {e.recurrence.key: e.recurrence for e in load_catalogue() if e.intermediate}
        degree_two = Recurrence.of(8, 4)
        assert combine(by_key[(9, 2)], degree_two).key in final
        inner = combine(by_key[(8, 2)], degree_two, first=8)
        assert combine(inner, degree_two).key == (16, 12, 10, 6)
        assert combine(inner, Recurrence.of(1)).key in final

    def test_intermediate_entries_branch_worse(self):
        _, factor = worst_factor([e.recurrence for e in load_catalogue(intermediate=False)])
        for entry in load_catalogue():
            if entry.intermediate:
                assert branching_factor(entry.recurrence) > factor

    def test_worst(self):
        worst, factor = worst_factor([e.recurrence for e in load_catalogue(intermediate=False)])
        assert worst.key == (16, 12, 10, 6)
        assert factor == pytest.approx(1.1467, abs=1e-4)

    def test_ties_keep_the_first(self):
        worst, _ = worst_factor([Recurrence.of(8, 4), Recurrence.of(4, 8)])
        assert worst.decrements == (8, 4)

    def test_empty(self):
        with pytest.raises(AnalysisUsageError):
            worst_factor([])
