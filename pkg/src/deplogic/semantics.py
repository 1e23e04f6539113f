"""Team semantics over finite models.

Evaluation is brute force: disjunction enumerates complementary splits of
the team (sound by downward closure), existential quantification enumerates
supplement functions row by row.  A budget caps the number of candidates
tried; exceeding it raises BudgetExceededError rather than guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

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
    Vocabulary,
    conjuncts,
    free_vars,
    infer_vocabulary,
    is_first_order,
    is_sentence,
)


class SemanticsError(Exception):
    """Base for evaluation errors."""


class UnboundVariableError(SemanticsError):
    pass


class NotFirstOrderError(SemanticsError):
    pass


class TeamError(SemanticsError):
    """Malformed team operation (domain mismatch, partial supplement map)."""


class FreeVariableError(SemanticsError):
    """A formula's free variables are not covered by the team domain."""


class SentenceError(SemanticsError):
    pass


class BudgetExceededError(SemanticsError):
    """The witness search ran out of budget; the answer is unknown."""


# ---------------------------------------------------------------------------
# Assignments and teams

@dataclass(frozen=True)
class Assignment:
    """An immutable finite map from variables to domain elements."""

    items: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        items = tuple(sorted(self.items))
        names = [v for v, _ in items]
        if len(names) != len(set(names)):
            raise TeamError("assignment maps a variable twice")
        object.__setattr__(self, "items", items)

    @staticmethod
    def of(mapping: Mapping[str, int]) -> "Assignment":
        return Assignment(tuple(mapping.items()))

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.items)

    def value(self, x: str) -> int:
        for v, a in self.items:
            if v == x:
                return a
        raise UnboundVariableError(f"variable {x} is not assigned")

    def extended(self, x: str, a: int) -> "Assignment":
        return Assignment(tuple((v, b) for v, b in self.items if v != x) + ((x, a),))

    def restricted(self, variables: frozenset[str]) -> "Assignment":
        return Assignment(tuple((v, a) for v, a in self.items if v in variables))

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)


@dataclass(frozen=True)
class Team:
    """A set of assignments sharing one variable domain."""

    variables: frozenset[str]
    rows: frozenset[Assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", frozenset(self.variables))
        object.__setattr__(self, "rows", frozenset(self.rows))
        for s in self.rows:
            if s.variables != self.variables:
                raise TeamError(
                    f"row domain {sorted(s.variables)} differs from team domain "
                    f"{sorted(self.variables)}"
                )

    def sorted_rows(self) -> list[Assignment]:
        return sorted(self.rows, key=lambda s: s.items)

    def __len__(self) -> int:
        return len(self.rows)


def make_team(variables: Iterable[str], rows: Iterable[Mapping[str, int]]) -> Team:
    """Convenience constructor from plain dicts."""
    return Team(frozenset(variables), frozenset(Assignment.of(r) for r in rows))


EMPTY_DOMAIN_SINGLETON = Team(frozenset(), frozenset((Assignment(),)))


# ---------------------------------------------------------------------------
# Models

@dataclass(frozen=True)
class Model:
    """A total finite structure with domain {0, ..., size-1}."""

    size: int
    relations: Mapping[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)
    functions: Mapping[str, Mapping[tuple[int, ...], int]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.size < 1:
            raise SemanticsError("model domain must be non-empty")
        object.__setattr__(
            self,
            "relations",
            {n: frozenset(tuple(t) for t in ts) for n, ts in self.relations.items()},
        )
        object.__setattr__(
            self,
            "functions",
            {n: dict(tbl) for n, tbl in self.functions.items()},
        )
        object.__setattr__(self, "constants", dict(self.constants))
        rng = range(self.size)
        for name, tuples in self.relations.items():
            for t in tuples:
                if any(a not in rng for a in t):
                    raise SemanticsError(f"relation {name} tuple {t} out of domain")
        for name, table in self.functions.items():
            arities = {len(args) for args in table}
            if len(arities) > 1:
                raise SemanticsError(f"function {name} table mixes arities")
            arity = arities.pop() if arities else 1
            expected = self.size ** arity
            if len(table) != expected:
                raise SemanticsError(
                    f"function {name} table is partial ({len(table)}/{expected} entries)"
                )
            for args, val in table.items():
                if any(a not in rng for a in args) or val not in rng:
                    raise SemanticsError(f"function {name} entry {args}->{val} out of domain")
        for name, val in self.constants.items():
            if val not in rng:
                raise SemanticsError(f"constant {name} value {val} out of domain")

    def vocabulary(self) -> Vocabulary:
        rel_ar = {n: (len(next(iter(ts))) if ts else 0) for n, ts in self.relations.items()}
        # arity of an empty relation cannot be recovered from tuples; callers
        # that need exact arities keep the Vocabulary from parse_model.
        fn_ar = {n: len(next(iter(tbl))) for n, tbl in self.functions.items()}
        return Vocabulary(rel_ar, fn_ar, frozenset(self.constants))


# ---------------------------------------------------------------------------
# Budget

DEFAULT_BUDGET_POINTS = 10_000_000


@dataclass(frozen=True)
class SearchBudget:
    """Cap on enumerated witnesses: supplement functions and splits tried."""

    max_choice_points: int = DEFAULT_BUDGET_POINTS

    def __post_init__(self) -> None:
        if self.max_choice_points < 1:
            raise SemanticsError("budget must be positive")


class _Counter:
    __slots__ = ("remaining",)

    def __init__(self, budget: SearchBudget) -> None:
        self.remaining = budget.max_choice_points

    def spend(self, n: int = 1) -> None:
        self.remaining -= n
        if self.remaining < 0:
            raise BudgetExceededError("search budget exhausted")


# ---------------------------------------------------------------------------
# Terms and first-order satisfaction

def eval_term(m: Model, s: Assignment, t: Term) -> int:
    """Value of a term under an assignment, by table lookup."""
    if isinstance(t, Var):
        return s.value(t.name)
    if isinstance(t, Const):
        if t.name not in m.constants:
            raise SemanticsError(f"constant {t.name} not interpreted")
        return m.constants[t.name]
    assert isinstance(t, Apply)
    if t.func not in m.functions:
        raise SemanticsError(f"function {t.func} not interpreted")
    args = tuple(eval_term(m, s, a) for a in t.args)
    return m.functions[t.func][args]


def fo_satisfies(m: Model, s: Assignment, phi: Formula) -> bool:
    """Classical Tarski satisfaction; rejects dependence atoms."""
    if not is_first_order(phi):
        raise NotFirstOrderError("fo_satisfies requires a first-order formula")
    if not free_vars(phi) <= s.variables:
        raise FreeVariableError("assignment does not cover the free variables")
    return _fo(m, s, phi)


def _fo(m: Model, s: Assignment, phi: Formula) -> bool:
    if isinstance(phi, Rel):
        tup = tuple(eval_term(m, s, t) for t in phi.args)
        return tup in m.relations.get(phi.name, frozenset())
    if isinstance(phi, Eq):
        return eval_term(m, s, phi.left) == eval_term(m, s, phi.right)
    if isinstance(phi, Not):
        return not _fo(m, s, phi.body)
    if isinstance(phi, And):
        return _fo(m, s, phi.left) and _fo(m, s, phi.right)
    if isinstance(phi, Or):
        return _fo(m, s, phi.left) or _fo(m, s, phi.right)
    if isinstance(phi, Exists):
        return any(_fo(m, s.extended(phi.var, a), phi.body) for a in range(m.size))
    if isinstance(phi, Forall):
        return all(_fo(m, s.extended(phi.var, a), phi.body) for a in range(m.size))
    raise NotFirstOrderError("dependence atom in first-order evaluation")


# ---------------------------------------------------------------------------
# Team algebra

def dep_holds(m: Model, team: Team, terms: tuple[Term, ...]) -> bool:
    """Dependence-atom satisfaction: the last term is a function of the rest."""
    if not terms:
        return True
    groups: dict[tuple[int, ...], int] = {}
    for s in team.rows:
        key = tuple(eval_term(m, s, t) for t in terms[:-1])
        value = eval_term(m, s, terms[-1])
        if groups.setdefault(key, value) != value:
            return False
    return True


def duplicate(team: Team, m: Model, x: str) -> Team:
    """The duplicated team: every row extended with every domain element at x."""
    rows = frozenset(
        s.extended(x, a) for s in team.rows for a in range(m.size)
    )
    return Team(team.variables | {x}, rows)


SupplementFunction = Union[Mapping[Assignment, int], Callable[[Assignment], int]]


def supplement(team: Team, choice: SupplementFunction, x: str) -> Team:
    """The supplemented team: each row extended at x by a chosen element."""
    rows = []
    for s in team.rows:
        if callable(choice):
            value = choice(s)
        else:
            if s not in choice:
                raise TeamError("supplement function undefined on a team row")
            value = choice[s]
        rows.append(s.extended(x, value))
    return Team(team.variables | {x}, frozenset(rows))


def restrict(team: Team, variables: frozenset[str] | set[str]) -> Team:
    """Pointwise restriction of every row; rows may merge."""
    vs = frozenset(variables)
    if not vs <= team.variables:
        raise TeamError("restriction variables exceed the team domain")
    return Team(vs, frozenset(s.restricted(vs) for s in team.rows))


# ---------------------------------------------------------------------------
# Team satisfaction

def satisfies(
    m: Model,
    team: Team,
    phi: Formula,
    budget: Optional[SearchBudget] = None,
) -> bool:
    """Team satisfaction by exhaustive witness search.

    Disjunction tries the complementary splits (Y, X - Y); existential
    quantification tries supplement functions.  Both are counted against
    the budget and enumerated in a fixed order, so answers are
    deterministic and never depend on the budget unless it runs out.
    """
    if not free_vars(phi) <= team.variables:
        raise FreeVariableError(
            f"free variables {sorted(free_vars(phi) - team.variables)} "
            "not in the team domain"
        )
    for s in team.rows:
        for _, a in s.items:
            if not 0 <= a < m.size:
                raise TeamError(f"team value {a} outside the model domain")
    counter = _Counter(budget or SearchBudget())
    memo: dict[tuple[Formula, Team], bool] = {}
    return _sat(m, team, phi, counter, memo)


def _sat(
    m: Model,
    team: Team,
    phi: Formula,
    counter: _Counter,
    memo: dict[tuple[Formula, Team], bool],
) -> bool:
    if is_first_order(phi):
        # Clause 1: a first-order formula holds iff it holds row by row.
        return all(_fo(m, s, phi) for s in team.sorted_rows())
    key = (phi, team)
    cached = memo.get(key)
    if cached is not None:
        return cached
    result = _sat_compound(m, team, phi, counter, memo)
    memo[key] = result
    return result


def _sat_compound(
    m: Model,
    team: Team,
    phi: Formula,
    counter: _Counter,
    memo: dict[tuple[Formula, Team], bool],
) -> bool:
    if isinstance(phi, Dep):
        return dep_holds(m, team, phi.args)

    if isinstance(phi, And):
        # Check the flat side first; order is invisible to the verdict.
        if is_first_order(phi.right) and not is_first_order(phi.left):
            return _sat(m, team, phi.right, counter, memo) and _sat(
                m, team, phi.left, counter, memo
            )
        return _sat(m, team, phi.left, counter, memo) and _sat(
            m, team, phi.right, counter, memo
        )

    if isinstance(phi, Or):
        rows = team.sorted_rows()
        n = len(rows)
        for mask in range(1 << n):
            counter.spend()
            left_rows = frozenset(rows[i] for i in range(n) if mask >> i & 1)
            right_rows = frozenset(rows[i] for i in range(n) if not mask >> i & 1)
            if _sat(m, Team(team.variables, left_rows), phi.left, counter, memo) and _sat(
                m, Team(team.variables, right_rows), phi.right, counter, memo
            ):
                return True
        return False

    if isinstance(phi, Exists):
        return _sat_exists(m, team, phi, counter, memo)

    if isinstance(phi, Forall):
        return _sat(m, duplicate(team, m, phi.var), phi.body, counter, memo)

    raise AssertionError(f"unhandled connective {type(phi).__name__}")


def _sat_exists(
    m: Model,
    team: Team,
    phi: Exists,
    counter: _Counter,
    memo: dict[tuple[Formula, Team], bool],
) -> bool:
    x = phi.var
    rows = team.sorted_rows()
    parts = conjuncts(phi.body)
    flat = [p for p in parts if is_first_order(p)]
    rest = [p for p in parts if not is_first_order(p)]
    # Conjuncts not mentioning x hold on a supplemented team iff they hold
    # on the original one (locality), so they are settled up front.
    settled = [p for p in rest if x not in free_vars(p)]
    searched = [p for p in rest if x in free_vars(p)]
    # Dependence atoms are cheap to refute; check them before nested blocks.
    searched.sort(key=lambda p: 0 if isinstance(p, Dep) else 1)
    if not all(_sat(m, team, p, counter, memo) for p in settled):
        return False

    # Clause-1 pruning: a first-order conjunct holds on the supplemented
    # team iff it holds on every extended row, so each row's admissible
    # witness values can be computed up front.
    admissible: list[list[int]] = []
    for s in rows:
        values = [
            a
            for a in range(m.size)
            if all(_fo(m, s.extended(x, a), p) for p in flat)
        ]
        if not values and rows:
            return False
        admissible.append(values)

    if not searched:
        counter.spend()
        return True

    extended_vars = team.variables | {x}
    for combo in itertools.product(*admissible):
        counter.spend()
        supplemented = Team(
            extended_vars,
            frozenset(s.extended(x, a) for s, a in zip(rows, combo)),
        )
        if all(_sat(m, supplemented, p, counter, memo) for p in searched):
            return True
    return False


def sentence_true(
    m: Model, phi: Formula, budget: Optional[SearchBudget] = None
) -> bool:
    """Truth of a sentence: satisfaction by the team of the empty assignment."""
    if not is_sentence(phi):
        raise SentenceError(
            f"formula has free variables {sorted(free_vars(phi))}"
        )
    return satisfies(m, EMPTY_DOMAIN_SINGLETON, phi, budget)


# ---------------------------------------------------------------------------
# Exhaustive equivalence oracle

@dataclass(frozen=True)
class Counterexample:
    model: Model
    team: Team
    left_value: bool
    right_value: bool


@dataclass(frozen=True)
class EquivResult:
    equivalent: bool
    counterexample: Optional[Counterexample] = None

    def __bool__(self) -> bool:
        return self.equivalent


def enumerate_models(voc: Vocabulary, size: int) -> Iterator[Model]:
    """All models of the given domain size over a vocabulary, in a fixed order."""
    rng = range(size)
    rel_names = sorted(voc.relations)
    fn_names = sorted(voc.functions)
    const_names = sorted(voc.constants)

    rel_choices = []
    for name in rel_names:
        arity = voc.relations[name]
        tuples = sorted(itertools.product(rng, repeat=arity))
        subsets = []
        for mask in range(1 << len(tuples)):
            subsets.append(frozenset(t for i, t in enumerate(tuples) if mask >> i & 1))
        rel_choices.append(subsets)

    fn_choices = []
    for name in fn_names:
        arity = voc.functions[name]
        keys = sorted(itertools.product(rng, repeat=arity))
        tables = [
            dict(zip(keys, values))
            for values in itertools.product(rng, repeat=len(keys))
        ]
        fn_choices.append(tables)

    const_choices = [list(rng) for _ in const_names]

    for rels in itertools.product(*rel_choices):
        for fns in itertools.product(*fn_choices):
            for consts in itertools.product(*const_choices):
                yield Model(
                    size,
                    dict(zip(rel_names, rels)),
                    dict(zip(fn_names, fns)),
                    dict(zip(const_names, consts)),
                )


def enumerate_teams(size: int, variables: frozenset[str]) -> Iterator[Team]:
    """All teams over the given variables with values below size."""
    vs = sorted(variables)
    assignments = [
        Assignment(tuple(zip(vs, values)))
        for values in itertools.product(range(size), repeat=len(vs))
    ]
    for mask in range(1 << len(assignments)):
        yield Team(
            frozenset(vs),
            frozenset(a for i, a in enumerate(assignments) if mask >> i & 1),
        )


def equiv_on_small_models(
    phi: Formula,
    psi: Formula,
    max_size: int,
    budget: Optional[SearchBudget] = None,
) -> EquivResult:
    """Exhaustively compare two formulas on all models up to max_size.

    The vocabulary is inferred from the formulas' symbol uses.  Every team
    over the union of free variables is tried; the first disagreement is
    reported.  Each evaluation gets a fresh budget.
    """
    voc = infer_vocabulary(phi).merged(infer_vocabulary(psi))
    fv = free_vars(phi) | free_vars(psi)
    for size in range(1, max_size + 1):
        for m in enumerate_models(voc, size):
            for team in enumerate_teams(size, fv):
                a = satisfies(m, team, phi, budget)
                b = satisfies(m, team, psi, budget)
                if a != b:
                    return EquivResult(False, Counterexample(m, team, a, b))
    return EquivResult(True)
