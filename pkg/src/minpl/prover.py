"""Goal-directed proof search over bracketed sequents.

The search needs no eigenvariables and no substitution.  A universal goal
shuts the context inside a bracket binding every variable bound in the goal;
an implication goal moves its antecedent into the context; an atomic goal
picks a head formula, possibly from inside nested brackets, rotating the
brackets so the head surfaces while everything that used to be outside them
moves inside.  Contexts stay canonical throughout, so pruning any branch that
repeats a sequent is a plain membership test, and that pruning alone makes
the search terminate.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .context import (
    BracketItem,
    Context,
    FormulaItem,
    bracket,
    depth,
    fuse,
)
from .syntax import (
    Atom,
    Forall,
    Formula,
    Imp,
    Polarity,
    ScopeTable,
    barendregt_rename,
    bound_vars,
    decompose,
    free_vars,
    pieces,
    polarity,
    print_formula,
    scope_table,
)


class NotPositive(ValueError):
    """Raised for inputs outside the positive fragment."""


class SearchTimeout(RuntimeError):
    """Raised when a configured wall-clock deadline expires mid-search."""


RULE_LIMP = "Limp"
RULE_RIMP = "Rimp"
RULE_RFORALL = "Rforall"


@dataclass(frozen=True)
class Sequent:
    context: Context
    goal: Formula

    def __str__(self) -> str:
        ctx = str(self.context)
        return f"{ctx} |- {self.goal}" if ctx else f"|- {self.goal}"


class SeenSet:
    """Branch-local collection of canonical sequents.

    ``add`` returns a new value, so sibling branches never observe each
    other's extensions.
    """

    __slots__ = ("_members",)

    def __init__(self, members: Iterable[Sequent] = ()):
        self._members = frozenset(members)

    def __contains__(self, s: Sequent) -> bool:
        return s in self._members

    def __len__(self) -> int:
        return len(self._members)

    def add(self, s: Sequent) -> "SeenSet":
        new = SeenSet()
        new._members = self._members | {s}
        return new


@dataclass(frozen=True)
class Derivation:
    """One rule application; ``premises`` hold the sub-derivations in order.

    For ``Limp`` nodes, ``head`` is the selected head formula and ``path``
    the chain of bracket items opened to reach it (empty when the head sat at
    the outer level).  A ``Limp`` node whose head has no arguments is a leaf.
    """

    rule: str
    conclusion: Sequent
    premises: tuple["Derivation", ...] = ()
    head: Optional[Formula] = None
    path: tuple[BracketItem, ...] = ()


def derivation_to_json(d: Derivation) -> dict:
    """Stable trace encoding: rule, printed sequent, head if any, premises."""
    node: dict = {"rule": d.rule, "sequent": str(d.conclusion)}
    if d.head is not None:
        node["head"] = print_formula(d.head)
    node["premises"] = [derivation_to_json(p) for p in d.premises]
    return node


@dataclass
class SearchStats:
    visited: int = 0
    max_seen: int = 0
    max_depth: int = 0
    elapsed: float = 0.0
    audit_violations: list[str] = field(default_factory=list)


class _Search:
    """Search state: statistics, optional auditing, deadline, rotation mode."""

    def __init__(
        self,
        stats: SearchStats,
        *,
        deadline: float | None = None,
        auditor: Callable[[Sequent], list[str]] | None = None,
        retain_opened: bool = False,
        on_visit: Callable[[Sequent], None] | None = None,
    ):
        self.stats = stats
        self.deadline = deadline
        self.auditor = auditor
        self.retain_opened = retain_opened
        self.on_visit = on_visit

    def search(self, seen: SeenSet, seq: Sequent) -> Optional[Derivation]:
        if seq in seen:
            return None
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout(f"no verdict for {seq} before the deadline")
        seen = seen.add(seq)
        stats = self.stats
        stats.visited += 1
        if len(seen) > stats.max_seen:
            stats.max_seen = len(seen)
        d = depth(seq.context)
        if d > stats.max_depth:
            stats.max_depth = d
        if self.auditor is not None:
            stats.audit_violations.extend(self.auditor(seq))
        if self.on_visit is not None:
            self.on_visit(seq)

        goal = seq.goal
        if isinstance(goal, Imp):
            premise = Sequent(
                fuse(seq.context, Context((FormulaItem(goal.left),))), goal.right
            )
            sub = self.search(seen, premise)
            return None if sub is None else Derivation(RULE_RIMP, seq, (sub,))
        if isinstance(goal, Forall):
            premise = Sequent(
                bracket(seq.context, frozenset(bound_vars(goal))), goal.body
            )
            sub = self.search(seen, premise)
            return None if sub is None else Derivation(RULE_RFORALL, seq, (sub,))
        return self.select_head(seen, seq)

    def select_head(self, seen: SeenSet, seq: Sequent) -> Optional[Derivation]:
        """Try every reachable head for an atomic goal, first success wins.

        Heads are tried in canonical item order, outer level first; a bracket
        is entered only when the goal has no free variable in its bound set.
        Entering a bracket at level k rebrackets everything outside it (the
        accumulated ``outside``) with that bracket's bound set, so premises
        see the rotated context.
        """
        goal = seq.goal
        goal_fv = free_vars(goal)

        def try_level(
            level: Context, outside: Context, path: tuple[BracketItem, ...]
        ) -> Optional[Derivation]:
            for item in level.items:
                if isinstance(item, FormulaItem):
                    head, args = decompose(item.formula)
                    if head != goal:
                        continue
                    premise_ctx = fuse(level, outside)
                    subs: list[Derivation] = []
                    for arg in args:
                        sub = self.search(seen, Sequent(premise_ctx, arg))
                        if sub is None:
                            break
                        subs.append(sub)
                    if len(subs) == len(args):
                        return Derivation(
                            RULE_LIMP, seq, tuple(subs), head=item.formula, path=path
                        )
                else:
                    if goal_fv & item.bound:
                        continue
                    if self.retain_opened:
                        siblings = level
                    else:
                        siblings = Context(
                            tuple(i for i in level.items if i != item)
                        )
                    rotated = bracket(fuse(outside, siblings), item.bound)
                    found = try_level(item.content, rotated, path + (item,))
                    if found is not None:
                        return found
            return None

        return try_level(seq.context, Context(), ())


def search(seen: SeenSet, seq: Sequent) -> tuple[bool, Optional[Derivation]]:
    """Decide one canonical sequent under an existing seen set."""
    engine = _Search(SearchStats())
    d = engine.search(seen, seq)
    return d is not None, d


def select_head(
    seen: SeenSet, context: Context, goal: Formula
) -> tuple[bool, Optional[Derivation]]:
    """Head selection for an atomic goal; ``seen`` must already contain the
    conclusion sequent's extension (as ``search`` arranges)."""
    if not isinstance(goal, Atom):
        raise ValueError(f"goal is not atomic: {print_formula(goal)}")
    engine = _Search(SearchStats())
    d = engine.select_head(seen, Sequent(context, goal))
    return d is not None, d


def derivable(
    f: Formula,
    *,
    audit: bool = False,
    timeout: float | None = None,
    retain_opened: bool = False,
    on_visit: Callable[[Sequent], None] | None = None,
) -> tuple[bool, SearchStats, Optional[Derivation]]:
    """Decide whether the positive formula ``f`` is derivable.

    The input is renamed so binders are distinct before the search starts.
    ``audit`` turns on per-sequent invariant checking (violations are
    collected in the returned stats and never change the verdict).
    ``retain_opened`` switches to an alternate head rotation that keeps a
    bracketed copy of an opened bracket; it exists for differential testing
    only.  Raises NotPositive outside the positive fragment and SearchTimeout
    if ``timeout`` seconds elapse, which termination makes a safety rail
    rather than an expected outcome.
    """
    pol = polarity(f)
    if pol not in (Polarity.POSITIVE, Polarity.BOTH):
        raise NotPositive(f"not a positive formula: {print_formula(f)}")
    renamed = barendregt_rename(f)
    stats = SearchStats()
    auditor = None
    if audit:
        table = scope_table(renamed)
        piece_set = pieces(renamed)
        auditor = lambda s: _audit(s, table, piece_set)
    deadline = None if timeout is None else time.monotonic() + timeout
    engine = _Search(
        stats,
        deadline=deadline,
        auditor=auditor,
        retain_opened=retain_opened,
        on_visit=on_visit,
    )
    if sys.getrecursionlimit() < 20000:
        sys.setrecursionlimit(20000)
    start = time.monotonic()
    try:
        derivation = engine.search(SeenSet(), Sequent(Context(), renamed))
    finally:
        stats.elapsed = time.monotonic() - start
    return derivation is not None, stats, derivation


def audit(seq: Sequent, table: ScopeTable, root: Formula) -> list[str]:
    """Check a sequent against the structural facts of searches rooted at
    ``root``: every formula is a piece of ``root``, every bracket subscript
    is the scope set of some binder, bracket nesting stays within the binder
    nesting depth, and a directly nested bracket's binder lies in the scope
    of the enclosing one.  Returns one message per violation."""
    return _audit(seq, table, pieces(root))


def _audit(seq: Sequent, table: ScopeTable, piece_set: frozenset[Formula]) -> list[str]:
    violations: list[str] = []
    subscript_binder = {v: x for x, v in table.scopes.items()}

    def check(ctx: Context, nesting: int, outer: str | None) -> None:
        for item in ctx.items:
            if isinstance(item, FormulaItem):
                if item.formula not in piece_set:
                    violations.append(f"not a piece of the input: {item}")
                continue
            binder = subscript_binder.get(item.bound)
            if binder is None:
                violations.append(f"bracket subscript is no binder scope: {item}")
            if nesting + 1 > table.depth:
                violations.append(
                    f"bracket nesting {nesting + 1} exceeds bound {table.depth}"
                )
            if binder is not None and outer is not None:
                if binder == outer or binder not in table.scopes[outer]:
                    violations.append(
                        f"bracket for {binder} nested under {outer}, "
                        f"which does not enclose it"
                    )
            check(item.content, nesting + 1, binder)

    check(seq.context, 0, None)
    if seq.goal not in piece_set:
        violations.append(f"goal is not a piece of the input: {seq.goal}")
    return violations
