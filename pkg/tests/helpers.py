"""Shared test utilities: random AST/model/team generators and the corpus
of sentences used by the transformation and acceptance tests."""

from __future__ import annotations

import itertools
import random
from typing import Optional

from deplogic import (
    And,
    Apply,
    Const,
    Dep,
    Eq,
    Exists,
    Forall,
    Formula,
    Model,
    Not,
    Or,
    Rel,
    SearchBudget,
    Team,
    Var,
    Vocabulary,
)
from deplogic.normalform import NormalFormSentence
from deplogic.semantics import Assignment

VOC_EMPTY = Vocabulary()
VOC_C = Vocabulary(constants={"c"})
VOC_R1 = Vocabulary(relations={"R": 1})
VOC_R1C = Vocabulary(relations={"R": 1}, constants={"c"})
VOC_R1S1C = Vocabulary(relations={"R": 1, "S": 1}, constants={"c"})
VOC_F1 = Vocabulary(functions={"f": 1})

SMALL_BUDGET = SearchBudget(200_000)


# ---------------------------------------------------------------------------
# Random generators

def random_term(rng: random.Random, variables: list[str], voc: Vocabulary) -> "Var | Const | Apply":
    choices = ["var"] * 3
    if voc.constants:
        choices.append("const")
    if voc.functions:
        choices.append("apply")
    kind = rng.choice(choices)
    if kind == "var" and variables:
        return Var(rng.choice(variables))
    if kind == "apply":
        func = rng.choice(sorted(voc.functions))
        arity = voc.functions[func]
        return Apply(func, tuple(random_term(rng, variables, voc) for _ in range(arity)))
    if voc.constants:
        return Const(rng.choice(sorted(voc.constants)))
    return Var(rng.choice(variables))


def random_formula(
    rng: random.Random,
    voc: Vocabulary,
    variables: list[str],
    depth: int,
    allow_dep: bool = True,
) -> Formula:
    """A random well-formed formula with free variables among `variables`
    plus anything it binds itself."""
    if depth <= 0 or rng.random() < 0.3:
        return _random_atom(rng, voc, variables, allow_dep)
    kind = rng.choice(["and", "or", "not", "exists", "forall", "atom"])
    if kind == "atom":
        return _random_atom(rng, voc, variables, allow_dep)
    if kind == "not":
        return Not(random_formula(rng, voc, variables, depth - 1, allow_dep=False))
    if kind in ("and", "or"):
        left = random_formula(rng, voc, variables, depth - 1, allow_dep)
        right = random_formula(rng, voc, variables, depth - 1, allow_dep)
        return And(left, right) if kind == "and" else Or(left, right)
    pool = [v for v in ("u", "v", "w") if v not in variables] or ["u"]
    var = rng.choice(pool)
    body = random_formula(rng, voc, variables + [var], depth - 1, allow_dep)
    return Exists(var, body) if kind == "exists" else Forall(var, body)


def _random_atom(
    rng: random.Random, voc: Vocabulary, variables: list[str], allow_dep: bool
) -> Formula:
    kinds = ["eq"]
    if voc.relations:
        kinds += ["rel", "rel"]
    if allow_dep:
        kinds.append("dep")
    kind = rng.choice(kinds)
    if kind == "rel":
        name = rng.choice(sorted(voc.relations))
        arity = voc.relations[name]
        return Rel(name, tuple(random_term(rng, variables, voc) for _ in range(arity)))
    if kind == "dep":
        n = rng.randint(0, min(3, max(1, len(variables))))
        return Dep(tuple(random_term(rng, variables, voc) for _ in range(n)))
    return Eq(random_term(rng, variables, voc), random_term(rng, variables, voc))


def random_fo_formula(
    rng: random.Random, voc: Vocabulary, variables: list[str], depth: int
) -> Formula:
    return random_formula(rng, voc, variables, depth, allow_dep=False)


def random_model(rng: random.Random, voc: Vocabulary, size: int) -> Model:
    relations = {}
    for name, arity in voc.relations.items():
        tuples = list(itertools.product(range(size), repeat=arity))
        relations[name] = frozenset(t for t in tuples if rng.random() < 0.5)
    functions = {}
    for name, arity in voc.functions.items():
        keys = itertools.product(range(size), repeat=arity)
        functions[name] = {k: rng.randrange(size) for k in keys}
    constants = {name: rng.randrange(size) for name in voc.constants}
    return Model(size, relations, functions, constants)


def random_team(
    rng: random.Random, variables: list[str], size: int, max_rows: int
) -> Team:
    all_rows = [
        Assignment(tuple(zip(variables, values)))
        for values in itertools.product(range(size), repeat=len(variables))
    ]
    count = rng.randint(0, min(max_rows, len(all_rows)))
    return Team(frozenset(variables), frozenset(rng.sample(all_rows, count)))


def random_normal_form(rng: random.Random, voc: Vocabulary = VOC_R1C) -> NormalFormSentence:
    """A small random normal form over {R/1, c}: 1-2 universals, 1-2
    existentials, each existential possibly determined by earlier variables."""
    m = rng.randint(1, 2)
    n = rng.randint(1, 2) if m == 1 else 1
    universals = tuple(f"x{i}" for i in range(m))
    existentials = tuple(f"y{i}" for i in range(n))
    atoms = []
    for i, y in enumerate(existentials):
        if rng.random() < 0.6:
            scope = list(universals) + list(existentials[:i])
            w = tuple(v for v in scope if rng.random() < 0.6)
            atoms.append((w, y))
    variables = list(universals + existentials)
    matrix = random_fo_formula(rng, voc, variables, depth=2)
    while not _quantifier_free(matrix):
        matrix = random_fo_formula(rng, voc, variables, depth=2)
    return NormalFormSentence(universals, existentials, tuple(atoms), matrix)


def _quantifier_free(phi: Formula) -> bool:
    from deplogic.syntax import is_quantifier_free

    return is_quantifier_free(phi)


# ---------------------------------------------------------------------------
# Sentence corpus (text, vocabulary) for normal-form and acceptance tests

THETA1_TEXT = "exists z. forall x. exists y. (dep(y,x) & ~(y = z))"
EXAMPLE3_TEXT = "forall x. exists y. exists z. (dep(y,z) & (x = z & ~(y = c)))"

CORPUS: list[tuple[str, str, Vocabulary]] = [
    ("theta1", THETA1_TEXT, VOC_C),
    ("example3", EXAMPLE3_TEXT, VOC_C),
    ("dep_after_matrix", "forall x. exists y. (~(y = x) & dep(y))", VOC_EMPTY),
    ("fo_disjunction", "(exists x. R(x)) | (forall y. ~R(y))", VOC_R1),
    ("nested_exists_dep", "exists x. (R(x) & exists y. (dep(x, y) & ~(x = y)))", VOC_R1),
    ("dep_or_branch", "forall x. (dep(x) | R(x))", VOC_R1),
    ("empty_dep_conj", "dep() & exists x. R(x)", VOC_R1),
    ("bare_exists_dep", "exists x. dep(x)", VOC_EMPTY),
    (
        "two_universals",
        "forall x. forall y. exists z. (dep(y, z) & (R(z) | ~(x = y)))",
        VOC_R1,
    ),
    ("exists_forall_fo", "exists x. forall y. (R(x) | ~R(y))", VOC_R1),
    ("function_dep", "forall x. dep(f(x), x)", VOC_F1),
    ("conj_prenex", "(exists x. R(x)) & (exists y. ~R(y))", VOC_R1),
]
