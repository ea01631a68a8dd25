"""Shared test utilities: seeded generators, independent oracles and
derivation replay, used by the unit suites and the acceptance gate alike.

Everything here is deliberately written as a separate, simpler route than the
library code it checks: the rewrite-step enumerator applies the cleaning rules
literally, replay recomputes premises from scratch, and the scope oracle scans
quantifier ancestors explicitly.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from minpl.context import (
    BracketItem,
    Context,
    FormulaItem,
    Item,
    bracket,
    free_vars_ctx,
    fuse,
)
from minpl.oracle import generate_positive
from minpl.prover import RULE_LIMP, RULE_RFORALL, RULE_RIMP, Derivation, Sequent
from minpl.syntax import (
    Atom,
    Forall,
    Formula,
    Func,
    Imp,
    Term,
    Var,
    bound_vars,
    decompose,
    free_vars,
    parse_formula,
)
from minpl.systemf import FType, TArrow, TForall, TVar

# ---------------------------------------------------------------------------
# Reported verdicts shared by the prover tests and the acceptance gate

DERIVABLE_TRUE = (
    "((((P -> Q) -> P) -> P) -> Q) -> Q",
    "((forall x. (((Q -> R) -> Q) -> P(x) -> Q)) -> R) -> R",
    "forall x. forall y. forall z. (((((P(y) -> P(x)) -> P(z)) -> "
    "((P(y) -> P(z)) -> P(z))) -> P(x)) -> P(x))",
)

DERIVABLE_FALSE = (
    "((forall x. (P(x) -> Q)) -> Q) -> Q",
    "((forall x. ((P(x) -> Q) -> Q)) -> Q) -> Q",
    "forall x. (((forall y. forall z. (((P(y) -> P(x)) -> P(z)) -> "
    "((P(y) -> P(z)) -> P(z)))) -> P(x)) -> P(x))",
    "((forall x. (P(x) -> ((forall y. (P(y) -> Q)) -> R) -> R)) -> Q) -> Q",
)

INHABITED_TRUE = (
    "forall X. forall Y. forall Z. (((((Y -> X) -> Z) -> ((Y -> Z) -> Z)) -> X) -> X)",
    "forall X. X -> X",
)

INHABITED_FALSE = (
    "forall X. (((forall Y. forall Z. (((Y -> X) -> Z) -> ((Y -> Z) -> Z))) -> X) -> X)",
)

# ---------------------------------------------------------------------------
# Seeded corpus

CORPUS_SIZE = 500


def corpus_formula(seed: int) -> Formula:
    """Deterministic corpus instance: sizes 4..12, quantifier depth 0..3."""
    return generate_positive(seed, size=4 + seed % 9, quantifier_depth=seed % 4)


# ---------------------------------------------------------------------------
# Random (possibly dirty) contexts for the cleaning suite

_POOL = tuple(
    parse_formula(s)
    for s in (
        "Q",
        "R",
        "P(x)",
        "P(y)",
        "S(z)",
        "P(x) -> Q",
        "Q -> P(z)",
        "P(x) -> P(y)",
    )
)


def random_item(rng: random.Random, depth_left: int) -> Item:
    if depth_left == 0 or rng.random() < 0.55:
        return FormulaItem(rng.choice(_POOL))
    bound = frozenset(rng.sample(("x", "y", "z"), rng.randint(1, 2)))
    return BracketItem(random_context(rng, depth_left - 1), bound)


def random_context(rng: random.Random, depth_left: int = 3) -> Context:
    items = [random_item(rng, depth_left) for _ in range(rng.randint(0, 4))]
    if items and rng.random() < 0.4:
        items.append(rng.choice(items))
    return Context(tuple(items))


def rewrite_steps(c: Context) -> list[Context]:
    """Every context reachable from ``c`` by one cleaning rule application,
    applied anywhere: collapse a duplicate, drop an empty bracket, or hoist a
    bracketed item with no free variable in the bound set."""
    out: list[Context] = []
    items = c.items
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] == items[j]:
                out.append(Context(items[:j] + items[j + 1 :]))
    for i, item in enumerate(items):
        if not isinstance(item, BracketItem):
            continue
        if not item.content.items:
            out.append(Context(items[:i] + items[i + 1 :]))
        inner = item.content.items
        for k, sub in enumerate(inner):
            if free_vars_ctx(sub) & item.bound:
                continue
            rest = BracketItem(Context(inner[:k] + inner[k + 1 :]), item.bound)
            out.append(Context(items[:i] + (sub, rest) + items[i + 1 :]))
        for rewritten in rewrite_steps(item.content):
            out.append(
                Context(items[:i] + (BracketItem(rewritten, item.bound),) + items[i + 1 :])
            )
    return out


# ---------------------------------------------------------------------------
# Derivation replay


def replay(d: Derivation) -> None:
    """Recompute every premise of a derivation from its conclusion and fail
    on any mismatch; also checks that no sequent repeats along a branch."""
    _replay(d, frozenset())


def _replay(d: Derivation, above: frozenset) -> None:
    assert d.conclusion not in above, f"repeated sequent on a branch: {d.conclusion}"
    above = above | {d.conclusion}
    ctx, goal = d.conclusion.context, d.conclusion.goal
    if d.rule == RULE_RIMP:
        assert isinstance(goal, Imp)
        premise = Sequent(fuse(ctx, Context((FormulaItem(goal.left),))), goal.right)
        assert len(d.premises) == 1 and d.premises[0].conclusion == premise
    elif d.rule == RULE_RFORALL:
        assert isinstance(goal, Forall)
        premise = Sequent(bracket(ctx, frozenset(bound_vars(goal))), goal.body)
        assert len(d.premises) == 1 and d.premises[0].conclusion == premise
    else:
        assert d.rule == RULE_LIMP and isinstance(goal, Atom) and d.head is not None
        level, outside = ctx, Context()
        crossed: frozenset[str] = frozenset()
        for b in d.path:
            assert b in level.items, f"opened bracket missing from its level: {b}"
            crossed |= b.bound
            siblings = Context(tuple(i for i in level.items if i != b))
            outside = bracket(fuse(outside, siblings), b.bound)
            level = b.content
        assert not (free_vars(goal) & crossed), "goal has free variables under a crossed bracket"
        assert FormulaItem(d.head) in level.items, "head not present at the opened level"
        head, args = decompose(d.head)
        assert head == goal, "selected head does not match the goal"
        premise_ctx = fuse(level, outside)
        assert len(d.premises) == len(args)
        for child, arg in zip(d.premises, args):
            assert child.conclusion == Sequent(premise_ctx, arg)
    for child in d.premises:
        _replay(child, above)


# ---------------------------------------------------------------------------
# Independent scope oracle: explicit quantifier-ancestor scan


def scope_table_bruteforce(f: Formula) -> tuple[dict[str, frozenset[str]], int]:
    scopes: dict[str, set[str]] = {}
    max_depth = 0

    def walk(g: Formula, ancestors: tuple[str, ...]) -> None:
        nonlocal max_depth
        if isinstance(g, Atom):
            return
        if isinstance(g, Imp):
            walk(g.left, ancestors)
            walk(g.right, ancestors)
            return
        scopes.setdefault(g.var, set()).add(g.var)
        for a in ancestors:
            scopes[a].add(g.var)
        max_depth = max(max_depth, len(ancestors) + 1)
        walk(g.body, ancestors + (g.var,))

    walk(f, ())
    return {x: frozenset(v) for x, v in scopes.items()}, max_depth


# ---------------------------------------------------------------------------
# Structural helpers


def position_formulas(f: Formula) -> list[Formula]:
    """The formula at every tree position, as a list (duplicates kept)."""
    out = [f]
    if isinstance(f, Imp):
        out += position_formulas(f.left) + position_formulas(f.right)
    elif isinstance(f, Forall):
        out += position_formulas(f.body)
    return out


def context_formulas(x: Context | Item) -> list[Formula]:
    """Every formula anywhere in a context, at any bracket depth."""
    if isinstance(x, Context):
        out: list[Formula] = []
        for item in x.items:
            out += context_formulas(item)
        return out
    if isinstance(x, FormulaItem):
        return [x.formula]
    return context_formulas(x.content)


def connectives(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Imp):
        return 1 + connectives(f.left) + connectives(f.right)
    return 1 + connectives(f.body)


def type_connectives(t: FType) -> int:
    if isinstance(t, TVar):
        return 0
    if isinstance(t, TArrow):
        return 1 + type_connectives(t.domain) + type_connectives(t.codomain)
    return 1 + type_connectives(t.body)


def debruijn(f: Formula, env: tuple[str, ...] = ()):
    """Nameless skeleton of a formula, for alpha-equivalence checks."""

    def conv_term(t: Term, env: tuple[str, ...]):
        if isinstance(t, Var):
            if t.name in env:
                return ("b", env.index(t.name))
            return ("f", t.name)
        return ("fn", t.name, tuple(conv_term(a, env) for a in t.args))

    if isinstance(f, Atom):
        return ("atom", f.pred, tuple(conv_term(t, env) for t in f.terms))
    if isinstance(f, Imp):
        return ("imp", debruijn(f.left, env), debruijn(f.right, env))
    return ("all", debruijn(f.body, (f.var,) + env))


def renaming_bijection(a, b) -> bool:
    """True iff two flat sequents differ only by a bijective renaming of
    variable names (applied uniformly to free and bound occurrences)."""
    fwd: dict[str, str] = {}
    bwd: dict[str, str] = {}

    def var_ok(x: str, y: str) -> bool:
        return fwd.setdefault(x, y) == y and bwd.setdefault(y, x) == x

    def term_ok(s: Term, t: Term) -> bool:
        if isinstance(s, Var) and isinstance(t, Var):
            return var_ok(s.name, t.name)
        if isinstance(s, Func) and isinstance(t, Func):
            return (
                s.name == t.name
                and len(s.args) == len(t.args)
                and all(term_ok(p, q) for p, q in zip(s.args, t.args))
            )
        return False

    def form_ok(f: Formula, g: Formula) -> bool:
        if isinstance(f, Atom) and isinstance(g, Atom):
            return (
                f.pred == g.pred
                and len(f.terms) == len(g.terms)
                and all(term_ok(p, q) for p, q in zip(f.terms, g.terms))
            )
        if isinstance(f, Imp) and isinstance(g, Imp):
            return form_ok(f.left, g.left) and form_ok(f.right, g.right)
        if isinstance(f, Forall) and isinstance(g, Forall):
            return var_ok(f.var, g.var) and form_ok(f.body, g.body)
        return False

    if len(a.context) != len(b.context):
        return False
    return all(form_ok(f, g) for f, g in zip(a.context, b.context)) and form_ok(
        a.goal, b.goal
    )


def random_type(rng: random.Random, size: int, scope: tuple[str, ...] = ("X", "Y", "Z")) -> FType:
    """Arbitrary type of bounded size; polarity unrestricted on purpose."""
    if size <= 0 or rng.random() < 0.25:
        return TVar(rng.choice(scope))
    if rng.random() < 0.3:
        return TForall(rng.choice(("X", "Y", "Z", "W")), random_type(rng, size - 1, scope))
    left = rng.randint(0, size - 1)
    return TArrow(random_type(rng, left, scope), random_type(rng, size - 1 - left, scope))


# ---------------------------------------------------------------------------
# Hypothesis strategies

var_names = st.sampled_from(("x", "y", "z", "u"))

terms = st.recursive(
    st.builds(Var, var_names),
    lambda kids: st.builds(
        Func, st.sampled_from(("f", "g")), st.tuples(kids) | st.tuples(kids, kids)
    ),
    max_leaves=3,
)

atoms = st.builds(
    Atom,
    st.sampled_from(("P", "Q", "R")),
    st.just(()) | st.tuples(terms) | st.tuples(terms, terms),
)

formulas = st.recursive(
    atoms,
    lambda kids: st.builds(Imp, kids, kids) | st.builds(Forall, var_names, kids),
    max_leaves=12,
)

tvar_names = st.sampled_from(("X", "Y", "Z"))

ftypes = st.recursive(
    st.builds(TVar, tvar_names),
    lambda kids: st.builds(TArrow, kids, kids) | st.builds(TForall, tvar_names, kids),
    max_leaves=10,
)
