"""Tests for the normal-form pipeline: preprocessing, prenexing, hoisting,
and prefix conversion, with the exhaustive small-model oracle as the
semantic referee."""

import pytest

from deplogic import (
    And,
    Dep,
    Eq,
    Exists,
    Forall,
    Not,
    Or,
    Rel,
    Var,
    Vocabulary,
    equiv_on_small_models,
    free_vars,
    is_first_order,
    parse_formula,
)
from deplogic.normalform import (
    NormalFormError,
    NormalFormSentence,
    ShapeError,
    hoist_dep_atoms,
    match_normal_form,
    preprocess,
    pull_existentials_left,
    reassemble,
    to_normal_form,
    to_prenex,
)
from deplogic.syntax import bound_vars, is_quantifier_free

from helpers import CORPUS, EXAMPLE3_TEXT, THETA1_TEXT, VOC_C, VOC_R1

x, y, z = Var("x"), Var("y"), Var("z")
VOC_RS = Vocabulary(relations={"R": 1, "S": 1})


def oracle_equiv(phi, psi, max_size=3):
    return equiv_on_small_models(phi, psi, max_size).equivalent


class TestPreprocess:
    def test_renames_second_binder(self):
        phi = parse_formula("(exists x. R(x)) & (exists x. S(x))", VOC_RS)
        out = preprocess(phi)
        assert out.left == Exists("x", Rel("R", (x,)))
        assert isinstance(out.right, Exists)
        assert out.right.var != "x"
        assert oracle_equiv(phi, out)

    def test_unnests_complex_dependence_terms(self):
        voc = Vocabulary(functions={"f": 1})
        phi = parse_formula("dep(f(x), y)", voc)
        out = preprocess(phi)
        assert isinstance(out, Exists)
        assert isinstance(out.body, And)
        assert isinstance(out.body.left, Dep)
        assert all(isinstance(t, Var) for t in out.body.left.args)
        assert oracle_equiv(phi, out)

    def test_clean_formula_unchanged(self):
        phi = parse_formula(EXAMPLE3_TEXT, VOC_C)
        assert preprocess(phi) == phi

    def test_no_variable_both_free_and_bound(self):
        phi = parse_formula("R(x) & exists x. S(x)", VOC_RS)
        out = preprocess(phi)
        assert not (free_vars(out) & bound_vars(out))
        assert oracle_equiv(phi, out)


class TestToPrenex:
    def test_disjunction_left_prefix_first(self):
        phi = parse_formula("(exists x. R(x)) | (forall y. S(y))", VOC_RS)
        out = to_prenex(preprocess(phi))
        assert out == Exists("x", Forall("y", Or(Rel("R", (x,)), Rel("S", (y,)))))
        assert oracle_equiv(phi, out)

    def test_no_quantifiers_is_fixed_point(self):
        phi = parse_formula("R(c)", Vocabulary(relations={"R": 1}, constants={"c"}))
        assert to_prenex(phi) == phi

    def test_conjunction_with_existential(self):
        phi = parse_formula("dep(x,y) & exists u. R(u)", VOC_R1)
        out = to_prenex(preprocess(phi))
        assert out == Exists("u", And(Dep((x, y)), Rel("R", (Var("u"),))))
        assert oracle_equiv(phi, out)

    def test_negation_flips_quantifiers(self):
        phi = parse_formula("~(exists x. R(x))", VOC_RS)
        out = to_prenex(phi)
        assert out == Forall("x", Not(Rel("R", (x,))))
        assert oracle_equiv(phi, out)


class TestHoistDepAtoms:
    def test_single_atom_pattern(self):
        theta = parse_formula("dep(y, x)", VOC_C)
        out = hoist_dep_atoms(theta)
        assert isinstance(out, Exists)
        fresh = out.var
        assert out.body == And(Dep((y, Var(fresh))), Eq(Var(fresh), x))
        assert oracle_equiv(theta, out)

    def test_first_order_untouched(self):
        theta = parse_formula("R(x)", VOC_R1)
        assert hoist_dep_atoms(theta) == theta

    def test_disjunction_merges_blocks(self):
        theta = parse_formula("dep(x,y) | dep(u,v)", VOC_C)
        out = hoist_dep_atoms(theta)
        assert isinstance(out, Exists) and isinstance(out.body, Exists)
        inner = out.body.body
        a, b = out.var, out.body.var
        assert inner == And(
            Dep((x, Var(a))),
            And(Dep((Var("u"), Var(b))), Or(Eq(Var(a), y), Eq(Var(b), Var("v")))),
        )
        # exhaustive equivalence on a two-variable instance (4 variables
        # would mean 2^16 teams), then sampled teams for the full shape
        small = parse_formula("dep(x) | dep(y)", VOC_C)
        assert oracle_equiv(small, hoist_dep_atoms(small), max_size=2)
        self._sampled_team_agreement(theta, out)

    @staticmethod
    def _sampled_team_agreement(phi, psi, samples=150):
        import random

        from deplogic import Model, satisfies
        from helpers import SMALL_BUDGET, random_team

        rng = random.Random(52)
        variables = sorted(free_vars(phi) | free_vars(psi))
        model = Model(2)
        for _ in range(samples):
            team = random_team(rng, variables, 2, max_rows=5)
            assert satisfies(model, team, phi, SMALL_BUDGET) == satisfies(
                model, team, psi, SMALL_BUDGET
            )

    def test_empty_dep_atom(self):
        theta = Dep(())
        out = hoist_dep_atoms(theta)
        assert isinstance(out, Exists)
        assert oracle_equiv(theta, out)

    def test_rejects_quantified_input(self):
        with pytest.raises(ShapeError):
            hoist_dep_atoms(Exists("x", Dep((x,))))


class TestPullExistentialsLeft:
    def test_already_shaped(self):
        phi = parse_formula("forall x. exists y. (dep(x, y) & y = x)", VOC_C)
        nf = pull_existentials_left(phi)
        assert nf.universals == ("x",)
        assert nf.existentials == ("y",)
        assert nf.dep_atoms == ((("x",), "y"),)

    def test_exists_forall_gets_constancy_atom(self):
        phi = parse_formula("exists x. forall y. ~(x = y)", VOC_C)
        nf = pull_existentials_left(phi)
        assert nf.universals == ("y",)
        assert nf.existentials == ("x",)
        assert nf.dep_atoms == (((), "x"),)
        assert nf.matrix == Not(Eq(x, y))
        assert oracle_equiv(phi, reassemble(nf))

    def test_context_variables_recorded(self):
        # moving x past u leaves it depending on the outer universal w
        phi = parse_formula(
            "forall w. exists x. forall u. (R(x) | ~(w = u))", VOC_R1
        )
        nf = to_normal_form(phi)
        assert nf.universals == ("w", "u")
        assert nf.dep_atoms == ((("w",), "x"),)
        assert oracle_equiv(phi, reassemble(nf))

    def test_malformed_shape_rejected(self):
        with pytest.raises(ShapeError):
            pull_existentials_left(parse_formula("exists x. (R(x) & dep(x))", VOC_R1))


class TestToNormalForm:
    def test_example3_already_normal(self):
        phi = parse_formula(EXAMPLE3_TEXT, VOC_C)
        nf = to_normal_form(phi)
        assert reassemble(nf) == phi
        assert nf.universals == ("x",)
        assert nf.existentials == ("y", "z")
        assert nf.dep_atoms == ((("y",), "z"),)

    def test_universal_only_sentence(self):
        phi = parse_formula("forall x. R(x)", VOC_R1)
        nf = to_normal_form(phi)
        assert nf.universals == ("x",)
        assert nf.existentials == ()
        assert nf.dep_atoms == ()
        assert nf.matrix == Rel("R", (x,))

    def test_theta1_oracle_verified(self):
        phi = parse_formula(THETA1_TEXT, VOC_C)
        nf = to_normal_form(phi)
        assert oracle_equiv(phi, reassemble(nf))

    def test_rejects_open_formulas(self):
        with pytest.raises(NormalFormError):
            to_normal_form(Dep((x,)))

    def test_output_shape_invariants(self):
        for name, text, voc in CORPUS:
            nf = to_normal_form(parse_formula(text, voc))
            assert is_quantifier_free(nf.matrix), name
            assert is_first_order(nf.matrix), name
            determined = [v for _, v in nf.dep_atoms]
            assert len(determined) == len(set(determined)), name

    def test_deterministic(self):
        for name, text, voc in CORPUS:
            phi = parse_formula(text, voc)
            assert to_normal_form(phi) == to_normal_form(phi), name

    def test_preserves_sentencehood(self):
        for name, text, voc in CORPUS:
            nf = to_normal_form(parse_formula(text, voc))
            assert free_vars(reassemble(nf)) == frozenset(), name


class TestMatchNormalForm:
    def test_roundtrip(self):
        phi = parse_formula(EXAMPLE3_TEXT, VOC_C)
        nf = match_normal_form(phi)
        assert reassemble(nf) == phi

    def test_rejects_universal_after_existential(self):
        phi = parse_formula("exists x. forall y. x = y", VOC_C)
        with pytest.raises(ShapeError):
            match_normal_form(phi)

    def test_rejects_dep_in_matrix(self):
        phi = parse_formula("forall x. exists y. (y = x & dep(y))", VOC_C)
        with pytest.raises(ShapeError):
            match_normal_form(phi)


class TestNormalFormSentenceInvariants:
    def test_forward_reference_rejected(self):
        with pytest.raises(NormalFormError):
            NormalFormSentence(("x",), ("y", "w"), ((("w",), "y"),), Eq(x, x))

    def test_duplicate_determination_rejected(self):
        with pytest.raises(NormalFormError):
            NormalFormSentence(
                ("x",), ("y",), ((("x",), "y"), ((), "y")), Eq(x, x)
            )

    def test_matrix_must_be_dep_free(self):
        with pytest.raises(NormalFormError):
            NormalFormSentence(("x",), (), (), Dep((x,)))
