import random

import pytest

from permroute import (
    CapExceededError,
    CnfFormula,
    DimacsError,
    Literal,
    ValidationError,
    count_satisfying,
    normalize_3sat,
    parse_dimacs,
)
from permroute.cnf import Assignment, evaluate, to_dimacs


class TestParseDimacs:
    def test_single_positive_clause(self):
        f = parse_dimacs("p cnf 1 1\n1 0\n")
        assert f.num_variables == 1
        assert f.clauses == ((Literal(1),),)

    def test_mixed_clause(self):
        f = parse_dimacs("p cnf 2 1\n1 -2 0\n")
        assert f.clauses == ((Literal(1), Literal(2, True)),)

    def test_comments_and_blank_lines(self):
        f = parse_dimacs("c a comment\n\np cnf 2 2\nc another\n1 0\n-2 0\n")
        assert len(f.clauses) == 2

    def test_clause_spanning_lines(self):
        f = parse_dimacs("p cnf 3 1\n1 2\n3 0\n")
        assert f.clauses == ((Literal(1), Literal(2), Literal(3)),)

    def test_literal_out_of_range_reports_line(self):
        with pytest.raises(DimacsError, match="line 2"):
            parse_dimacs("p cnf 1 1\n2 0\n")

    def test_malformed_header(self):
        with pytest.raises(DimacsError, match="header"):
            parse_dimacs("p cnf x 1\n1 0\n")

    def test_missing_terminator(self):
        with pytest.raises(DimacsError, match="terminator"):
            parse_dimacs("p cnf 2 1\n1 2\n")

    def test_missing_header(self):
        with pytest.raises(DimacsError):
            parse_dimacs("1 0\n")

    def test_round_trip(self):
        text = "p cnf 3 2\n1 -2 3 0\n-1 0\n"
        assert to_dimacs(parse_dimacs(text)) == text


class TestNormalize:
    def test_dedup(self):
        f = CnfFormula(2, ((Literal(1), Literal(1), Literal(2)),))
        assert normalize_3sat(f).clauses == ((Literal(1), Literal(2)),)

    def test_tautology_removed(self):
        f = CnfFormula(2, ((Literal(1), Literal(1, True), Literal(2)),))
        assert normalize_3sat(f).clauses == ()

    def test_tautology_removal_warns_with_count(self, caplog):
        f = CnfFormula(2, ((Literal(1), Literal(1, True)), (Literal(2), Literal(2, True)), (Literal(1),)))
        with caplog.at_level("WARNING", logger="permroute.cnf"):
            out = normalize_3sat(f)
        assert out.clauses == ((Literal(1),),)
        assert any("2 tautological" in record.getMessage() for record in caplog.records)

    def test_too_long_rejected(self):
        f = CnfFormula(4, ((Literal(1), Literal(2), Literal(3), Literal(4)),))
        with pytest.raises(ValidationError, match="at most 3"):
            normalize_3sat(f)

    def test_four_literals_collapsing_to_three_allowed(self):
        f = CnfFormula(3, ((Literal(1), Literal(1), Literal(2), Literal(3)),))
        assert normalize_3sat(f).clauses == ((Literal(1), Literal(2), Literal(3)),)

    def test_empty_clause_rejected(self):
        f = CnfFormula(1, ((),))
        with pytest.raises(ValidationError, match="empty"):
            normalize_3sat(f)


class TestCountSatisfying:
    def test_single_variable(self):
        assert count_satisfying(parse_dimacs("p cnf 1 1\n1 0\n")) == 1

    def test_two_variable_or(self):
        assert count_satisfying(parse_dimacs("p cnf 2 1\n1 2 0\n")) == 3

    def test_three_variable_or(self):
        assert count_satisfying(parse_dimacs("p cnf 3 1\n1 2 3 0\n")) == 7

    def test_empty_formula_counts_everything(self):
        assert count_satisfying(CnfFormula(3, ())) == 8

    def test_empty_clause_is_unsatisfiable(self):
        assert count_satisfying(CnfFormula(2, ((),))) == 0

    def test_unused_variable_doubles_count(self):
        with_unused = parse_dimacs("p cnf 2 1\n1 0\n")
        assert count_satisfying(with_unused) == 2

    def test_cap(self):
        f = CnfFormula(25, ())
        with pytest.raises(CapExceededError):
            count_satisfying(f)
        assert count_satisfying(f, max_variables=25) == 2**25

    def test_invariant_under_reordering(self):
        rng = random.Random(11)
        base = parse_dimacs("p cnf 4 3\n1 -2 3 0\n-1 4 0\n2 -3 -4 0\n")
        expected = count_satisfying(base)
        for _ in range(10):
            clauses = list(base.clauses)
            rng.shuffle(clauses)
            shuffled = []
            for clause in clauses:
                lits = list(clause)
                rng.shuffle(lits)
                shuffled.append(tuple(lits))
            assert count_satisfying(CnfFormula(4, tuple(shuffled))) == expected

    def test_bounded_by_full_space_with_equality_iff_no_clauses(self):
        f = parse_dimacs("p cnf 3 1\n1 0\n")
        assert count_satisfying(f) < 2**3
        assert count_satisfying(CnfFormula(3, ())) == 2**3

    def test_matches_naive_evaluation(self):
        f = parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n")
        naive = sum(
            1
            for m in range(8)
            if evaluate(f, Assignment(tuple(bool(m >> i & 1) for i in range(3))))
        )
        assert count_satisfying(f) == naive == 4
