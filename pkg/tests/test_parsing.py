"""Grammar, precedence, error positions, and round-trip identity."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qraise.errors import ParseError
from qraise.formulas import And, FALSE, Iff, Implies, Not, Or, TRUE, Var
from qraise.parsing import (
    parse_formula,
    parse_qbf,
    serialize_formula,
    serialize_qbf,
    serialize_qbf_compact,
)
from qraise.qbf import Qbf, Quantifier

from test_formulas import formulas


class TestFormulaGrammar:
    def test_precedence_chain(self):
        f = parse_formula("a & b | c -> d <-> e")
        assert f == Iff(Implies(Or(And(Var("a"), Var("b")), Var("c")), Var("d")), Var("e"))

    def test_right_associative_implication(self):
        assert parse_formula("a -> b -> c") == Implies(Var("a"), Implies(Var("b"), Var("c")))

    def test_left_associative_conjunction(self):
        assert parse_formula("a & b & c") == And(And(Var("a"), Var("b")), Var("c"))

    def test_negation_binds_tightest(self):
        assert parse_formula("!a & b") == And(Not(Var("a")), Var("b"))

    def test_double_negation(self):
        assert parse_formula("!!a") == Not(Not(Var("a")))

    def test_parentheses(self):
        assert parse_formula("a & (b | c)") == And(Var("a"), Or(Var("b"), Var("c")))

    def test_constants(self):
        assert parse_formula("true & !false") == And(TRUE, Not(FALSE))

    def test_arrow_without_spaces(self):
        assert parse_formula("x->y") == Implies(Var("x"), Var("y"))

    def test_suffixed_names(self):
        assert parse_formula("x+ -> _q1") == Implies(Var("x+"), Var("_q1"))

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as err:
            parse_formula("x &\n& y")
        assert err.value.line == 2
        assert err.value.column == 1

    def test_trailing_garbage(self):
        with pytest.raises(ParseError, match="trailing"):
            parse_formula("x y")

    def test_unknown_character(self):
        with pytest.raises(ParseError, match="unexpected character"):
            parse_formula("x % y")

    @given(formulas())
    def test_round_trip_is_identity(self, f):
        assert parse_formula(serialize_formula(f)) == f


class TestQbfFormat:
    def test_spec_shape(self):
        q = parse_qbf("exists x;\nforall y;\n: (x | !y)")
        assert q == Qbf(
            ((Quantifier.EXISTS, "x"), (Quantifier.FORALL, "y")), Or(Var("x"), Not(Var("y")))
        )

    def test_empty_prefix(self):
        assert parse_qbf(": true") == Qbf((), TRUE)

    def test_multiple_vars_per_group(self):
        q = parse_qbf("exists x y; : x & y")
        assert q.prefix == ((Quantifier.EXISTS, "x"), (Quantifier.EXISTS, "y"))

    def test_free_variable_rejected(self):
        with pytest.raises(ParseError, match="free variable x"):
            parse_qbf("forall y; : x")

    def test_duplicate_prefix_variable(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_qbf("exists x; forall x; : x")

    def test_reserved_underscore_rejected(self):
        with pytest.raises(ParseError, match="reserved"):
            parse_qbf("exists _p1; : _p1")

    def test_keyword_cannot_be_quantified(self):
        with pytest.raises(ParseError, match="keyword"):
            parse_qbf("exists true; : true")

    def test_empty_quantifier_group(self):
        with pytest.raises(ParseError):
            parse_qbf("exists ; : true")

    def test_serialize_groups_runs(self):
        q = parse_qbf("exists x y; forall z; : x & y | z")
        assert serialize_qbf(q) == "exists x y;\nforall z;\n: x & y | z"

    def test_compact_form_reparses(self):
        q = parse_qbf("exists x; forall y; : x <-> y")
        assert parse_qbf(serialize_qbf_compact(q)) == q

    @given(st.permutations(["x", "y", "z"]), st.tuples(st.booleans(), st.booleans(), st.booleans()))
    def test_prefix_round_trip(self, names, quants):
        prefix = tuple(
            (Quantifier.EXISTS if e else Quantifier.FORALL, n) for e, n in zip(quants, names)
        )
        q = Qbf(prefix, Or(Or(Var(names[0]), Var(names[1])), Var(names[2])))
        assert parse_qbf(serialize_qbf(q)) == q
