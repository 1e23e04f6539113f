"""First-order approximations of normal-form sentences.

The n-th approximation unrolls the quantifier block of a normal form n
times with round-indexed variable copies.  Uniformity guards equate the
witnesses of two rounds whenever the dependence arguments agree, one guard
per entry of the guard set (the sentence's own dependence atoms plus a
default atom over all universals for each undetermined existential).
"""

from __future__ import annotations

from typing import Optional

from .syntax import (
    And,
    Dep,
    Eq,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Var,
    conjoin,
    fresh_variable,
    rename_free,
)
from .normalform import DepAtomSpec, NormalFormSentence, reassemble
from .semantics import Model, SearchBudget, sentence_true


GuardSet = tuple[DepAtomSpec, ...]


def build_guard_set(nf: NormalFormSentence) -> GuardSet:
    """One guard per existential: its own dep atom if determined, otherwise
    the default atom over all universals; ordered by existential position."""
    own = {y: (w, y) for w, y in nf.dep_atoms}
    return tuple(
        own.get(y, (tuple(nf.universals), y)) for y in nf.existentials
    )


def _round_renamings(nf: NormalFormSentence, n: int) -> list[dict[str, str]]:
    bases = list(nf.universals) + list(nf.existentials)
    used = set(bases)
    rounds = []
    for level in range(n):
        mapping = {}
        for base in bases:
            name = fresh_variable(used, f"{base}_{level}")
            used.add(name)
            mapping[base] = name
        rounds.append(mapping)
    return rounds


def _guard(
    spec: DepAtomSpec, earlier: dict[str, str], current: dict[str, str]
) -> Formula:
    """(w_j = w_l) -> (y_j = y_l); an empty antecedent leaves the bare equality."""
    w, y = spec
    consequent = Eq(Var(earlier[y]), Var(current[y]))
    antecedents = [Eq(Var(earlier[v]), Var(current[v])) for v in w]
    if not antecedents:
        return consequent
    return Or(Not(conjoin(antecedents)), consequent)


def _wrap_round(nf: NormalFormSentence, mapping: dict[str, str], body: Formula) -> Formula:
    for y in reversed(nf.existentials):
        body = Exists(mapping[y], body)
    for x in reversed(nf.universals):
        body = Forall(mapping[x], body)
    return body


def build_approximation(nf: NormalFormSentence, n: int) -> Formula:
    """The n-th first-order approximation (n >= 1)."""
    if n < 1:
        raise ValueError("approximation index must be at least 1")
    guards = build_guard_set(nf)
    rounds = _round_renamings(nf, n)
    block: Optional[Formula] = None
    for level in reversed(range(n)):
        parts: list[Formula] = [rename_free(nf.matrix, rounds[level])]
        for j in range(level):
            parts.extend(_guard(g, rounds[j], rounds[level]) for g in guards)
        if block is not None:
            parts.append(block)
        block = _wrap_round(nf, rounds[level], conjoin(parts))
    assert block is not None
    return block


def build_omega(nf: NormalFormSentence, n: int) -> Formula:
    """The strengthened approximation: the innermost round keeps the
    sentence's own dependence atoms.  For n = 1 this is the sentence itself."""
    if n < 1:
        raise ValueError("approximation index must be at least 1")
    if n == 1:
        return reassemble(nf)
    guards = build_guard_set(nf)
    rounds = _round_renamings(nf, n)
    block: Optional[Formula] = None
    for level in reversed(range(n)):
        parts = [rename_free(nf.matrix, rounds[level])]
        if level == n - 1:
            parts.extend(
                Dep(
                    tuple(Var(rounds[level][v]) for v in w)
                    + (Var(rounds[level][y]),)
                )
                for w, y in nf.dep_atoms
            )
        for j in range(level):
            parts.extend(_guard(g, rounds[j], rounds[level]) for g in guards)
        if block is not None:
            parts.append(block)
        block = _wrap_round(nf, rounds[level], conjoin(parts))
    assert block is not None
    return block


def approximation_chain_check(
    nf: NormalFormSentence,
    m: Model,
    up_to: int,
    budget: Optional[SearchBudget] = None,
) -> list[bool]:
    """Truth values of the first up_to approximations on a finite model."""
    if up_to < 1:
        raise ValueError("up_to must be at least 1")
    return [
        sentence_true(m, build_approximation(nf, i), budget)
        for i in range(1, up_to + 1)
    ]
