"""Natural-deduction proof checking for dependence logic.

Proofs are linear scripts: numbered steps carrying a formula, a rule tag,
premise references, and the assumption steps the rule discharges.  The
checker tracks which assumptions every step's derivation rests on and
enforces the side conditions of the introduction/elimination rules, the
disjunction and scope rules, unnesting, dependence distribution,
dependence introduction/elimination, and the identity axioms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagnostics import Diagnostic
from .syntax import (
    And,
    Apply,
    Const,
    Dep,
    Eq,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Rel,
    Term,
    Var,
    alpha_equal,
    all_vars,
    conjoin,
    conjuncts,
    free_vars,
    is_first_order,
    is_quantifier_free,
    substitute,
    term_vars,
    CaptureError,
)
from .normalform import ShapeError, match_normal_form
from .approximation import build_approximation


class RuleSchemaError(Exception):
    """A forward rule application does not match the rule's premise schema."""


RULES = frozenset(
    {
        "assume",
        "and_i",
        "and_e_l",
        "and_e_r",
        "or_i_l",
        "or_i_r",
        "or_e",
        "neg_i",
        "neg_e",
        "forall_i",
        "forall_e",
        "exists_i",
        "exists_e",
        "disj_subst",
        "disj_comm",
        "disj_assoc",
        "scope_forall",
        "scope_exists",
        "unnest",
        "dep_distribute",
        "dep_intro",
        "dep_elim",
        "identity",
    }
)


@dataclass(frozen=True)
class ProofStep:
    index: int
    formula: Formula
    rule: str
    premises: tuple[int, ...] = ()
    discharged: tuple[int, ...] = ()


@dataclass(frozen=True)
class Proof:
    steps: tuple[ProofStep, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a proof needs at least one step")
        seen: set[int] = set()
        for step in self.steps:
            if step.index in seen:
                raise ValueError(f"duplicate step index {step.index}")
            seen.add(step.index)

    @property
    def conclusion(self) -> Formula:
        return self.steps[-1].formula

    def step(self, index: int) -> ProofStep:
        for s in self.steps:
            if s.index == index:
                return s
        raise KeyError(index)


@dataclass(frozen=True)
class CheckReport:
    verdict: str  # "accepted" | "rejected"
    failures: tuple[tuple[int, Diagnostic], ...] = ()

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"


# ---------------------------------------------------------------------------
# Forward rule application

def apply_rule7(premise: Formula) -> Formula:
    """Dependence introduction: exists x forall y A becomes
    forall y exists x (dep(z..., x) & A), z... the free variables of A
    other than x and y, sorted by name."""
    if not isinstance(premise, Exists) or not isinstance(premise.body, Forall):
        raise RuleSchemaError("premise must have shape exists x forall y A")
    x = premise.var
    y = premise.body.var
    body = premise.body.body
    context = sorted(free_vars(body) - {x, y})
    atom = Dep(tuple(Var(v) for v in context) + (Var(x),))
    return Forall(y, Exists(x, And(atom, body)))


def apply_rule8(premise: Formula) -> Formula:
    """Dependence elimination: a normal-form premise yields the two-round
    first-order unrolling with uniformity guards (the second approximation)."""
    try:
        nf = match_normal_form(premise)
    except ShapeError as e:
        raise RuleSchemaError(f"premise does not match the rule-8 schema: {e}") from e
    if not nf.universals:
        raise RuleSchemaError("rule 8 needs a leading universal block")
    return build_approximation(nf, 2)


# ---------------------------------------------------------------------------
# Checking infrastructure

@dataclass
class _Analysis:
    order: dict[int, int]  # step index -> position
    deps: dict[int, frozenset[int]]  # step index -> open assumptions used
    discharged_at: dict[int, int]  # assumption index -> discharging step
    structural: list[tuple[int, Diagnostic]]


def _err(msg: str) -> Diagnostic:
    return Diagnostic("error", msg)


def _analyze(proof: Proof) -> _Analysis:
    order = {s.index: pos for pos, s in enumerate(proof.steps)}
    deps: dict[int, frozenset[int]] = {}
    discharged_at: dict[int, int] = {}
    structural: list[tuple[int, Diagnostic]] = []

    for pos, step in enumerate(proof.steps):
        problems = []
        for ref in step.premises + step.discharged:
            if ref not in order:
                problems.append(f"reference to missing step {ref}")
            elif order[ref] >= pos:
                problems.append(f"reference to step {ref} does not point backwards")
        if step.rule == "assume" and (step.premises or step.discharged):
            problems.append("assumptions take no premises and discharge nothing")
        if problems:
            for p in problems:
                structural.append((step.index, _err(p)))
            deps[step.index] = frozenset()
            continue

        if step.rule == "assume":
            deps[step.index] = frozenset((step.index,))
            continue

        used: set[int] = set()
        for ref in step.premises:
            for assumption in deps.get(ref, frozenset()):
                closer = discharged_at.get(assumption)
                if closer is not None:
                    structural.append(
                        (
                            step.index,
                            _err(
                                f"premise {ref} relies on assumption {assumption}, "
                                f"already discharged at step {closer}"
                            ),
                        )
                    )
                else:
                    used.add(assumption)

        for d in step.discharged:
            target = proof.step(d)
            if target.rule != "assume":
                structural.append(
                    (step.index, _err(f"step {d} is not an assumption"))
                )
                continue
            if d in discharged_at:
                structural.append(
                    (
                        step.index,
                        _err(
                            f"assumption {d} was already discharged at step "
                            f"{discharged_at[d]}"
                        ),
                    )
                )
                continue
            discharged_at[d] = step.index
            used.discard(d)

        deps[step.index] = frozenset(used)

    return _Analysis(order, deps, discharged_at, structural)


def _structural_for(analysis: _Analysis, index: int) -> list[Diagnostic]:
    return [d for i, d in analysis.structural if i == index]


def check_step(proof: Proof, index: int) -> list[Diagnostic]:
    """Diagnostics for a single step (empty list means the step is fine)."""
    analysis = _analyze(proof)
    step = proof.step(index)
    problems = _structural_for(analysis, index)
    if problems:
        return problems
    return [_err(m) for m in _check_rule(proof, step, analysis)]


def check_proof(proof: Proof, allowed_open: Sequence[Formula]) -> CheckReport:
    """Check every step and the final set of open assumptions."""
    analysis = _analyze(proof)
    failures: list[tuple[int, Diagnostic]] = list(analysis.structural)
    bad_structurally = {i for i, _ in analysis.structural}
    for step in proof.steps:
        if step.index in bad_structurally:
            continue
        for message in _check_rule(proof, step, analysis):
            failures.append((step.index, _err(message)))

    for step in proof.steps:
        if step.rule != "assume" or step.index in analysis.discharged_at:
            continue
        if not any(alpha_equal(step.formula, h) for h in allowed_open):
            failures.append(
                (
                    step.index,
                    _err("assumption is still open and not among the hypotheses"),
                )
            )

    failures.sort(key=lambda pair: pair[0])
    verdict = "accepted" if not failures else "rejected"
    return CheckReport(verdict, tuple(failures))


# ---------------------------------------------------------------------------
# Per-rule checks: each returns a list of problem messages.

def _check_rule(proof: Proof, step: ProofStep, analysis: _Analysis) -> list[str]:
    checker = _CHECKERS.get(step.rule)
    if checker is None:
        return [f"unknown rule {step.rule!r}"]
    return checker(proof, step, analysis)


def _arity(step: ProofStep, premises: int, discharged: int) -> Optional[str]:
    if len(step.premises) != premises:
        return (
            f"rule {step.rule} expects {premises} premise(s), "
            f"got {len(step.premises)}"
        )
    if len(step.discharged) != discharged:
        return (
            f"rule {step.rule} discharges {discharged} assumption(s), "
            f"got {len(step.discharged)}"
        )
    return None


def _premise_formulas(proof: Proof, step: ProofStep) -> list[Formula]:
    return [proof.step(i).formula for i in step.premises]


def _check_assume(proof: Proof, step: ProofStep, analysis: _Analysis) -> list[str]:
    return []


def _check_and_i(proof, step, analysis):
    bad = _arity(step, 2, 0)
    if bad:
        return [bad]
    a, b = _premise_formulas(proof, step)
    if step.formula != And(a, b):
        return ["conclusion is not the conjunction of the premises in order"]
    return []


def _check_and_e_l(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(p, And) or step.formula != p.left:
        return ["conclusion is not the left conjunct of the premise"]
    return []


def _check_and_e_r(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(p, And) or step.formula != p.right:
        return ["conclusion is not the right conjunct of the premise"]
    return []


def _check_or_i_l(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(step.formula, Or) or step.formula.left != p:
        return ["conclusion must be a disjunction whose left disjunct is the premise"]
    return []


def _check_or_i_r(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(step.formula, Or) or step.formula.right != p:
        return ["conclusion must be a disjunction whose right disjunct is the premise"]
    return []


def _check_or_e(proof, step, analysis):
    bad = _arity(step, 3, 2)
    if bad:
        return [bad]
    disj, c1, c2 = _premise_formulas(proof, step)
    a_idx, b_idx = step.discharged
    problems = []
    if not isinstance(disj, Or):
        return ["first premise must be a disjunction"]
    if proof.step(a_idx).formula != disj.left:
        problems.append("first discharged assumption must be the left disjunct")
    if proof.step(b_idx).formula != disj.right:
        problems.append("second discharged assumption must be the right disjunct")
    if c1 != step.formula or c2 != step.formula:
        problems.append("both subderivations must conclude the step's formula")
    if not is_first_order(step.formula):
        problems.append("Condition 1: the conclusion must be first-order")
    if b_idx in analysis.deps.get(step.premises[1], frozenset()):
        problems.append(
            "the left subderivation may not use the right disjunct's assumption"
        )
    if a_idx in analysis.deps.get(step.premises[2], frozenset()):
        problems.append(
            "the right subderivation may not use the left disjunct's assumption"
        )
    return problems


def _check_neg_i(proof, step, analysis):
    bad = _arity(step, 1, 1)
    if bad:
        return [bad]
    (contradiction,) = _premise_formulas(proof, step)
    assumption = proof.step(step.discharged[0]).formula
    problems = []
    if not (
        isinstance(contradiction, And)
        and isinstance(contradiction.right, Not)
        and contradiction.right.body == contradiction.left
    ):
        problems.append("premise must have shape B & ~B")
    if not is_first_order(assumption):
        problems.append("Condition 2: the discharged assumption must be first-order")
        return problems
    if step.formula != Not(assumption):
        problems.append("conclusion must be the negation of the discharged assumption")
    return problems


def _check_neg_e(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not (isinstance(p, Not) and isinstance(p.body, Not)):
        return ["premise must be a double negation"]
    if step.formula != p.body.body:
        return ["conclusion must be the doubly negated formula"]
    return []


def _check_forall_i(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(step.formula, Forall) or step.formula.body != p:
        return ["conclusion must universally quantify the premise"]
    x = step.formula.var
    problems = []
    for assumption in sorted(analysis.deps.get(step.premises[0], frozenset())):
        if x in free_vars(proof.step(assumption).formula):
            problems.append(
                f"Condition 3: {x} is free in open assumption {assumption}"
            )
    return problems


def _instantiation_term(
    template: Formula, instance: Formula, x: str
) -> tuple[bool, Optional[Term]]:
    """Find the unique term t with template(t/x) == instance, if any."""
    witness: list[Term] = []

    def terms(a: Term, b: Term, shadowed: bool) -> bool:
        if isinstance(a, Var) and a.name == x and not shadowed:
            if witness and witness[0] != b:
                return False
            if not witness:
                witness.append(b)
            return True
        if isinstance(a, Var) and isinstance(b, Var):
            return a.name == b.name
        if isinstance(a, Const) and isinstance(b, Const):
            return a.name == b.name
        if isinstance(a, Apply) and isinstance(b, Apply):
            return (
                a.func == b.func
                and len(a.args) == len(b.args)
                and all(terms(s, t, shadowed) for s, t in zip(a.args, b.args))
            )
        return False

    def go(a: Formula, b: Formula, shadowed: bool) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Rel):
            return (
                a.name == b.name
                and len(a.args) == len(b.args)
                and all(terms(s, t, shadowed) for s, t in zip(a.args, b.args))
            )
        if isinstance(a, Eq):
            return terms(a.left, b.left, shadowed) and terms(a.right, b.right, shadowed)
        if isinstance(a, Dep):
            return len(a.args) == len(b.args) and all(
                terms(s, t, shadowed) for s, t in zip(a.args, b.args)
            )
        if isinstance(a, Not):
            return go(a.body, b.body, shadowed)
        if isinstance(a, (And, Or)):
            return go(a.left, b.left, shadowed) and go(a.right, b.right, shadowed)
        assert isinstance(a, (Exists, Forall))
        if a.var != b.var:
            return False
        return go(a.body, b.body, shadowed or a.var == x)

    ok = go(template, instance, False)
    return ok, (witness[0] if witness else None)


def _check_instantiation(template: Formula, x: str, instance: Formula) -> Optional[str]:
    ok, t = _instantiation_term(template, instance, x)
    if not ok:
        return "formulas do not differ by a substitution for the quantified variable"
    if t is None:
        return None  # x not free; instance equals template
    try:
        if substitute(template, t, x) != instance:
            return "substitution check failed"
    except CaptureError:
        return "a variable of the substituted term would become bound"
    return None


def _check_forall_e(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(p, Forall):
        return ["premise must be universally quantified"]
    problem = _check_instantiation(p.body, p.var, step.formula)
    return [problem] if problem else []


def _check_exists_i(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(step.formula, Exists):
        return ["conclusion must be existentially quantified"]
    problem = _check_instantiation(step.formula.body, step.formula.var, p)
    return [problem] if problem else []


def _check_exists_e(proof, step, analysis):
    bad = _arity(step, 2, 1)
    if bad:
        return [bad]
    ex, body_conclusion = _premise_formulas(proof, step)
    if not isinstance(ex, Exists):
        return ["first premise must be existentially quantified"]
    x = ex.var
    assumption_idx = step.discharged[0]
    problems = []
    if proof.step(assumption_idx).formula != ex.body:
        problems.append("discharged assumption must be the quantified body")
    if step.formula != body_conclusion:
        problems.append("conclusion must equal the second premise")
    if x in free_vars(step.formula):
        problems.append(f"Condition 4: {x} is free in the conclusion")
    for assumption in sorted(
        analysis.deps.get(step.premises[1], frozenset()) - {assumption_idx}
    ):
        if x in free_vars(proof.step(assumption).formula):
            problems.append(
                f"Condition 4: {x} is free in open assumption {assumption}"
            )
    return problems


def _check_disj_subst(proof, step, analysis):
    bad = _arity(step, 2, 1)
    if bad:
        return [bad]
    disj, c = _premise_formulas(proof, step)
    if not isinstance(disj, Or):
        return ["first premise must be a disjunction"]
    problems = []
    if proof.step(step.discharged[0]).formula != disj.right:
        problems.append("the discharged assumption must be the right disjunct")
    if step.formula != Or(disj.left, c):
        problems.append("conclusion must replace the right disjunct by the derived formula")
    return problems


def _check_disj_comm(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(p, Or) or step.formula != Or(p.right, p.left):
        return ["conclusion must be the premise with disjuncts swapped"]
    return []


def _check_disj_assoc(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if (
        not isinstance(p, Or)
        or not isinstance(p.left, Or)
        or step.formula != Or(p.left.left, Or(p.left.right, p.right))
    ):
        return ["conclusion must reassociate (A | B) | C to A | (B | C)"]
    return []


def _check_scope(proof, step, analysis, quant):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not (isinstance(p, Or) and isinstance(p.left, quant)):
        return ["premise must be a disjunction with a quantified left disjunct"]
    x = p.left.var
    if x in free_vars(p.right):
        return [f"scope extension requires {x} not free in the right disjunct"]
    if step.formula != quant(x, Or(p.left.body, p.right)):
        return ["conclusion must extend the quantifier scope over the disjunction"]
    return []


def _check_scope_forall(proof, step, analysis):
    return _check_scope(proof, step, analysis, Forall)


def _check_scope_exists(proof, step, analysis):
    return _check_scope(proof, step, analysis, Exists)


def _check_unnest(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(p, Dep) or not p.args:
        return ["premise must be a non-empty dependence atom"]
    c = step.formula
    if not (
        isinstance(c, Exists)
        and isinstance(c.body, And)
        and isinstance(c.body.left, Dep)
        and isinstance(c.body.right, Eq)
    ):
        return ["conclusion must have shape exists z (dep(...) & z = t)"]
    z = c.var
    atom = c.body.left
    eq = c.body.right
    if eq.left != Var(z):
        return ["the equation must bind the fresh variable on the left"]
    if len(atom.args) != len(p.args):
        return ["unnesting must preserve the atom's arity"]
    replaced = [i for i, (a, b) in enumerate(zip(atom.args, p.args)) if a != b]
    if len(replaced) != 1:
        return ["exactly one argument position must be replaced"]
    i = replaced[0]
    if atom.args[i] != Var(z) or eq.right != p.args[i]:
        return ["the replaced argument must become the fresh variable, equated to it"]
    if any(z in term_vars(t) for t in p.args):
        return ["the introduced variable must be new to the atom"]
    return []


def _parse_dep_block(phi: Formula) -> tuple[list[str], list[Dep], Formula]:
    """Split exists y1..yn (dep-atoms & core); requires one atom per bound
    variable, each determining its variable, core without dependence atoms."""
    bound: list[str] = []
    while isinstance(phi, Exists):
        bound.append(phi.var)
        phi = phi.body
    parts = conjuncts(phi)
    atoms: list[Dep] = []
    for part in parts[: len(bound)]:
        if not isinstance(part, Dep):
            raise RuleSchemaError("expected one dependence atom per quantifier")
        if not part.args or not all(isinstance(t, Var) for t in part.args):
            raise RuleSchemaError("dependence atoms must be over variables")
        atoms.append(part)
    rest = parts[len(bound) :]
    if len(atoms) != len(bound) or not rest:
        raise RuleSchemaError("expected one dependence atom per quantifier")
    for y, atom in zip(bound, atoms):
        if atom.args[-1] != Var(y):
            raise RuleSchemaError(f"atom does not determine its quantifier {y}")
    core = conjoin(rest)
    if not is_quantifier_free(core) or not is_first_order(core):
        raise RuleSchemaError("core must be quantifier-free without dependence atoms")
    return bound, atoms, core


def _check_dep_distribute(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not isinstance(p, Or):
        return ["premise must be a disjunction"]
    try:
        ys_a, atoms_a, core_a = _parse_dep_block(p.left)
        ys_b, atoms_b, core_b = _parse_dep_block(p.right)
    except RuleSchemaError as e:
        return [str(e)]
    left_names = set(ys_a)
    right_names = set(ys_b)
    problems = []
    if left_names & all_vars(p.right):
        problems.append("left block variables may not appear in the right disjunct")
    if right_names & all_vars(p.left):
        problems.append("right block variables may not appear in the left disjunct")
    expected = conjoin(list(atoms_a) + list(atoms_b) + [Or(core_a, core_b)])
    for y in reversed(ys_a + ys_b):
        expected = Exists(y, expected)
    if step.formula != expected:
        problems.append("conclusion does not match the distributed form")
    return problems


def _check_dep_intro(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    if not (isinstance(p, Exists) and isinstance(p.body, Forall)):
        return ["premise must have shape exists x forall y A"]
    x, y, body = p.var, p.body.var, p.body.body
    c = step.formula
    if not (
        isinstance(c, Forall)
        and c.var == y
        and isinstance(c.body, Exists)
        and c.body.var == x
        and isinstance(c.body.body, And)
        and isinstance(c.body.body.left, Dep)
        and c.body.body.right == body
    ):
        return ["conclusion must have shape forall y exists x (dep(..., x) & A)"]
    atom = c.body.body.left
    if not atom.args or atom.args[-1] != Var(x):
        return ["the dependence atom must determine the moved variable"]
    if not all(isinstance(t, Var) for t in atom.args):
        return ["the dependence atom must be over variables"]
    context = {t.name for t in atom.args[:-1]}
    if context != set(free_vars(body) - {x, y}):
        return [
            "the dependence atom must list exactly the free variables of the "
            "body other than the two quantified ones"
        ]
    if len(atom.args) != len(set(atom.args)):
        return ["the dependence atom lists a variable twice"]
    return []


def _check_dep_elim(proof, step, analysis):
    bad = _arity(step, 1, 0)
    if bad:
        return [bad]
    (p,) = _premise_formulas(proof, step)
    try:
        expected = apply_rule8(p)
    except RuleSchemaError as e:
        return [str(e)]
    if not alpha_equal(step.formula, expected):
        return ["conclusion differs from the guard-set unrolling of the premise"]
    return []


def _rewrites_to(a: Formula, b: Formula, t1: Term, t2: Term) -> bool:
    """b arises from a by replacing some whole-subterm occurrences of t1
    by t2; under binders only when the binder does not touch t1 or t2."""

    def rt(x: Term, y: Term) -> bool:
        if x == y:
            return True
        if x == t1 and y == t2:
            return True
        if isinstance(x, Apply) and isinstance(y, Apply):
            return (
                x.func == y.func
                and len(x.args) == len(y.args)
                and all(rt(s, t) for s, t in zip(x.args, y.args))
            )
        return False

    def go(x: Formula, y: Formula) -> bool:
        if type(x) is not type(y):
            return False
        if isinstance(x, Rel):
            return (
                x.name == y.name
                and len(x.args) == len(y.args)
                and all(rt(s, t) for s, t in zip(x.args, y.args))
            )
        if isinstance(x, Eq):
            return rt(x.left, y.left) and rt(x.right, y.right)
        if isinstance(x, Not):
            return go(x.body, y.body)
        if isinstance(x, (And, Or)):
            return go(x.left, y.left) and go(x.right, y.right)
        if isinstance(x, (Exists, Forall)):
            if x.var != y.var:
                return False
            if x.var in term_vars(t1) | term_vars(t2):
                return x == y
            return go(x.body, y.body)
        return False

    return go(a, b)


def _check_identity(proof, step, analysis):
    c = step.formula
    if len(step.premises) == 0:
        if step.discharged:
            return ["identity axioms discharge nothing"]
        if isinstance(c, Eq) and c.left == c.right:
            return []
        return ["a zero-premise identity step must conclude t = t"]
    if len(step.premises) == 1:
        (p,) = _premise_formulas(proof, step)
        if isinstance(p, Eq) and c == Eq(p.right, p.left):
            return []
        return ["a one-premise identity step must conclude symmetry"]
    if len(step.premises) == 2:
        p1, p2 = _premise_formulas(proof, step)
        if (
            isinstance(p1, Eq)
            and isinstance(p2, Eq)
            and isinstance(c, Eq)
            and p1.right == p2.left
            and c == Eq(p1.left, p2.right)
        ):
            return []
        if isinstance(p1, Eq) and is_first_order(p2) and is_first_order(c):
            if _rewrites_to(p2, c, p1.left, p1.right):
                return []
            return [
                "conclusion does not arise from the second premise by "
                "replacing occurrences of the equated term"
            ]
        return ["two-premise identity steps are transitivity or congruence"]
    return ["identity steps take at most two premises"]


_CHECKERS = {
    "assume": _check_assume,
    "and_i": _check_and_i,
    "and_e_l": _check_and_e_l,
    "and_e_r": _check_and_e_r,
    "or_i_l": _check_or_i_l,
    "or_i_r": _check_or_i_r,
    "or_e": _check_or_e,
    "neg_i": _check_neg_i,
    "neg_e": _check_neg_e,
    "forall_i": _check_forall_i,
    "forall_e": _check_forall_e,
    "exists_i": _check_exists_i,
    "exists_e": _check_exists_e,
    "disj_subst": _check_disj_subst,
    "disj_comm": _check_disj_comm,
    "disj_assoc": _check_disj_assoc,
    "scope_forall": _check_scope_forall,
    "scope_exists": _check_scope_exists,
    "unnest": _check_unnest,
    "dep_distribute": _check_dep_distribute,
    "dep_intro": _check_dep_intro,
    "dep_elim": _check_dep_elim,
    "identity": _check_identity,
}
