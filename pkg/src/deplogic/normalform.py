"""Transformation of sentences into the universal-existential normal form.

The pipeline has four stages: preprocessing (distinct binders, variables-only
dependence atoms), prenexing, hoisting of dependence atoms out of the matrix
into a fresh existential block, and conversion of the mixed quantifier prefix
into forall*-exists* shape, trading each crossed universal for a dependence
atom that pins the moved witness to the variables already in scope.
"""

from __future__ import annotations

from dataclasses import dataclass

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
    all_vars,
    conjoin,
    conjuncts,
    free_vars,
    fresh_variable,
    is_first_order,
    is_quantifier_free,
    is_sentence,
    term_vars,
)


class NormalFormError(Exception):
    pass


class ShapeError(NormalFormError):
    """Input does not match the required structural shape."""


DepAtomSpec = tuple[tuple[str, ...], str]


@dataclass(frozen=True)
class NormalFormSentence:
    """A sentence of shape forall x... exists y... (deps & matrix).

    Dependence atoms are (arguments, determined variable) pairs over
    variables only; each atom's arguments must already be in scope when its
    determined existential is introduced.
    """

    universals: tuple[str, ...]
    existentials: tuple[str, ...]
    dep_atoms: tuple[DepAtomSpec, ...]
    matrix: Formula

    def __post_init__(self) -> None:
        object.__setattr__(self, "universals", tuple(self.universals))
        object.__setattr__(self, "existentials", tuple(self.existentials))
        object.__setattr__(
            self,
            "dep_atoms",
            tuple((tuple(w), y) for w, y in self.dep_atoms),
        )
        names = list(self.universals) + list(self.existentials)
        if len(names) != len(set(names)):
            raise NormalFormError("prefix variables must be pairwise distinct")
        if not is_quantifier_free(self.matrix):
            raise NormalFormError("matrix must be quantifier-free")
        if not is_first_order(self.matrix):
            raise NormalFormError("matrix must not contain dependence atoms")
        if not free_vars(self.matrix) <= set(names):
            raise NormalFormError("matrix has variables outside the prefix")
        determined = [y for _, y in self.dep_atoms]
        if len(determined) != len(set(determined)):
            raise NormalFormError("an existential is determined twice")
        position = {y: i for i, y in enumerate(self.existentials)}
        scope = set(self.universals)
        for w, y in self.dep_atoms:
            if y not in position:
                raise NormalFormError(f"determined variable {y} is not existential")
            allowed = scope | set(self.existentials[: position[y]])
            if not set(w) <= allowed:
                raise NormalFormError(
                    f"dep atom for {y} uses variables not yet in scope: "
                    f"{sorted(set(w) - allowed)}"
                )


def reassemble(nf: NormalFormSentence) -> Formula:
    """The sentence the normal form denotes: prefix over (deps & matrix)."""
    parts: list[Formula] = [
        Dep(tuple(Var(v) for v in w) + (Var(y),)) for w, y in nf.dep_atoms
    ]
    parts.append(nf.matrix)
    body = conjoin(parts)
    for y in reversed(nf.existentials):
        body = Exists(y, body)
    for x in reversed(nf.universals):
        body = Forall(x, body)
    return body


def match_normal_form(phi: Formula) -> NormalFormSentence:
    """Parse a formula of the exact reassembled shape back into parts."""
    universals: list[str] = []
    existentials: list[str] = []
    while isinstance(phi, Forall):
        if existentials:
            raise ShapeError("universal quantifier after an existential")
        universals.append(phi.var)
        phi = phi.body
    while isinstance(phi, Exists):
        existentials.append(phi.var)
        phi = phi.body
    parts = conjuncts(phi)
    atoms: list[DepAtomSpec] = []
    index = 0
    for part in parts[:-1]:
        if not isinstance(part, Dep):
            break
        if not all(isinstance(t, Var) for t in part.args):
            raise ShapeError("dependence atoms in normal form must be over variables")
        if not part.args:
            raise ShapeError("empty dependence atom in normal form")
        names = tuple(t.name for t in part.args)
        atoms.append((names[:-1], names[-1]))
        index += 1
    rest = parts[index:]
    if not rest:
        raise ShapeError("missing matrix after dependence atoms")
    matrix = conjoin(rest)
    try:
        return NormalFormSentence(
            tuple(universals), tuple(existentials), tuple(atoms), matrix
        )
    except NormalFormError as e:
        raise ShapeError(str(e)) from e


# ---------------------------------------------------------------------------
# Stage 0: preprocessing

def preprocess(phi: Formula) -> Formula:
    """Alpha-variant with pairwise-distinct binders, no variable both free
    and bound, and dependence atoms over variables only."""
    used = set(free_vars(phi))
    renamed = _rename_binders(phi, {}, used)
    return _unnest_deps(renamed, used)


def _rename_binders(phi: Formula, env: dict[str, str], used: set[str]) -> Formula:
    def rt(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, Const):
            return t
        assert isinstance(t, Apply)
        return Apply(t.func, tuple(rt(a) for a in t.args))

    if isinstance(phi, Dep):
        return Dep(tuple(rt(a) for a in phi.args))
    if isinstance(phi, Rel):
        return Rel(phi.name, tuple(rt(a) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(rt(phi.left), rt(phi.right))
    if isinstance(phi, Not):
        return Not(_rename_binders(phi.body, env, used))
    if isinstance(phi, And):
        return And(
            _rename_binders(phi.left, env, used),
            _rename_binders(phi.right, env, used),
        )
    if isinstance(phi, Or):
        return Or(
            _rename_binders(phi.left, env, used),
            _rename_binders(phi.right, env, used),
        )
    assert isinstance(phi, (Exists, Forall))
    fresh = fresh_variable(used, phi.var)
    used.add(fresh)
    inner_env = dict(env)
    inner_env[phi.var] = fresh
    body = _rename_binders(phi.body, inner_env, used)
    return type(phi)(fresh, body)


def _unnest_deps(phi: Formula, used: set[str]) -> Formula:
    if isinstance(phi, (Rel, Eq)):
        return phi
    if isinstance(phi, Dep):
        return _unnest_atom(phi.args, used)
    if isinstance(phi, Not):
        return Not(_unnest_deps(phi.body, used))
    if isinstance(phi, And):
        return And(_unnest_deps(phi.left, used), _unnest_deps(phi.right, used))
    if isinstance(phi, Or):
        return Or(_unnest_deps(phi.left, used), _unnest_deps(phi.right, used))
    assert isinstance(phi, (Exists, Forall))
    return type(phi)(phi.var, _unnest_deps(phi.body, used))


def _unnest_atom(args: tuple[Term, ...], used: set[str]) -> Formula:
    """Replace the leftmost complex argument by a fresh existential, then
    recurse; pure-variable atoms are returned as is."""
    for i, t in enumerate(args):
        if isinstance(t, Var):
            continue
        z = fresh_variable(used, "z")
        used.add(z)
        inner = _unnest_atom(args[:i] + (Var(z),) + args[i + 1 :], used)
        return Exists(z, And(inner, Eq(Var(z), t)))
    return Dep(args)


# ---------------------------------------------------------------------------
# Stage 1: prenex form

def to_prenex(phi: Formula) -> Formula:
    """Equivalent prenex formula; the left operand's prefix comes first."""
    prefix, matrix = _prenex(phi)
    return _wrap_prefix(prefix, matrix)


Quantifier = tuple[str, str]  # ("forall" | "exists", variable)


def _wrap_prefix(prefix: list[Quantifier], matrix: Formula) -> Formula:
    out = matrix
    for kind, v in reversed(prefix):
        out = Forall(v, out) if kind == "forall" else Exists(v, out)
    return out


def _prenex(phi: Formula) -> tuple[list[Quantifier], Formula]:
    if isinstance(phi, (Rel, Eq, Dep)):
        return [], phi
    if isinstance(phi, Not):
        prefix, matrix = _prenex(phi.body)
        flipped = [
            ("exists" if kind == "forall" else "forall", v) for kind, v in prefix
        ]
        return flipped, Not(matrix)
    if isinstance(phi, (And, Or)):
        lp, lm = _prenex(phi.left)
        rp, rm = _prenex(phi.right)
        return lp + rp, type(phi)(lm, rm)
    if isinstance(phi, Exists):
        prefix, matrix = _prenex(phi.body)
        return [("exists", phi.var)] + prefix, matrix
    assert isinstance(phi, Forall)
    prefix, matrix = _prenex(phi.body)
    return [("forall", phi.var)] + prefix, matrix


# ---------------------------------------------------------------------------
# Stage 2: hoisting dependence atoms

def hoist_dep_atoms(theta: Formula) -> Formula:
    """Equivalent form exists z... (deps & core) for a quantifier-free input."""
    if not is_quantifier_free(theta):
        raise ShapeError("hoisting expects a quantifier-free formula")
    used = set(all_vars(theta))
    zs, atoms, core = _hoist(theta, used)
    return _assemble_hoisted(zs, atoms, core)


def _assemble_hoisted(zs: list[str], atoms: list[Dep], core: Formula) -> Formula:
    body = conjoin(list(atoms) + [core]) if atoms else core
    for z in reversed(zs):
        body = Exists(z, body)
    return body


def _hoist(theta: Formula, used: set[str]) -> tuple[list[str], list[Dep], Formula]:
    if is_first_order(theta):
        return [], [], theta
    if isinstance(theta, Dep):
        if not all(isinstance(t, Var) for t in theta.args):
            raise ShapeError("dependence atoms must be unnested before hoisting")
        hint = theta.args[-1].name if theta.args else "z"
        z = fresh_variable(used, hint)
        used.add(z)
        atom = Dep(tuple(theta.args[:-1]) + (Var(z),))
        # dep() hoists to the degenerate pattern exists z (dep(z) & z = z).
        target = theta.args[-1] if theta.args else Var(z)
        return [z], [atom], Eq(Var(z), target)
    if isinstance(theta, (And, Or)):
        lz, la, lc = _hoist(theta.left, used)
        rz, ra, rc = _hoist(theta.right, used)
        return lz + rz, la + ra, type(theta)(lc, rc)
    raise ShapeError(f"cannot hoist through {type(theta).__name__}")


# ---------------------------------------------------------------------------
# Stage 3/4: prefix conversion

def pull_existentials_left(phi: Formula) -> NormalFormSentence:
    """Convert a prenex-over-hoisted formula into the normal form.

    Processes the quantifier prefix right to left.  A universal is simply
    prepended; an existential crossing h pending universals picks up one
    dependence atom over the variables still free in its scope.
    """
    prefix: list[Quantifier] = []
    body = phi
    while isinstance(body, (Exists, Forall)):
        prefix.append(
            ("exists" if isinstance(body, Exists) else "forall", body.var)
        )
        body = body.body

    parts = conjuncts(body)
    atoms: list[DepAtomSpec] = []
    index = 0
    for part in parts[:-1]:
        if not isinstance(part, Dep):
            break
        if not all(isinstance(t, Var) for t in part.args) or not part.args:
            raise ShapeError("dependence atoms must be over variables")
        names = tuple(t.name for t in part.args)
        atoms.append((names[:-1], names[-1]))
        index += 1
    rest = parts[index:]
    if not rest:
        raise ShapeError("missing matrix")
    matrix = conjoin(rest)
    if not is_quantifier_free(matrix) or not is_first_order(matrix):
        raise ShapeError("matrix must be quantifier-free and dependence-free")

    universals: list[str] = []
    existentials: list[str] = []
    dep_list: list[DepAtomSpec] = list(atoms)

    def block_free_vars() -> frozenset[str]:
        bound = set(universals) | set(existentials)
        fv = set(free_vars(matrix))
        for w, y in dep_list:
            fv.update(w)
            fv.add(y)
        return frozenset(fv - bound)

    for kind, v in reversed(prefix):
        if kind == "forall":
            universals.insert(0, v)
        elif not universals:
            existentials.insert(0, v)
        else:
            context = sorted(block_free_vars() - {v})
            dep_list.insert(0, (tuple(context), v))
            existentials.insert(0, v)

    return NormalFormSentence(
        tuple(universals), tuple(existentials), tuple(dep_list), matrix
    )


def to_normal_form(phi: Formula) -> NormalFormSentence:
    """Full pipeline: preprocess, prenex, hoist, pull existentials left.

    A sentence already of the normal shape is returned as-is instead of
    being re-hoisted through fresh variables.
    """
    if not is_sentence(phi):
        raise NormalFormError(
            f"normal form is defined for sentences; free: {sorted(free_vars(phi))}"
        )
    clean = preprocess(phi)
    try:
        return match_normal_form(clean)
    except ShapeError:
        pass
    prefix, matrix = _prenex(clean)
    used = set(all_vars(clean))
    zs, atoms, core = _hoist(matrix, used)
    hoisted = _assemble_hoisted(zs, atoms, core)
    return pull_existentials_left(_wrap_prefix(prefix, hoisted))
