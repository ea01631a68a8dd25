"""Bracketed hypothesis contexts and the cleaning rules that keep them canonical.

A context is a finite multiset of items; an item is either a bare formula or a
bracket ``[G]_V`` that locally binds the variables of ``V`` over the
sub-context ``G``.  Brackets are the scoping device that replaces eigenvariable
renaming during proof search: instead of inventing a fresh variable, the prover
shuts the old one inside a bracket.

Three rewrite rules simplify contexts:

* an item with no free variable in ``V`` moves out of its bracket,
* an empty bracket disappears,
* two identical items at the same level collapse into one.

The rules terminate (``measure`` strictly decreases) but their confluence is
not settled, so ``normalize`` commits to one fixed strategy and additionally
sorts every level by a total item order.  Equal multisets then get equal
representations, and sequent equality during search is plain structural
comparison.  ``fuse`` and ``bracket`` maintain normal forms incrementally so
search never re-cleans a context from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .syntax import _TokenStream, _parse_formula, Formula, free_vars, print_formula


@dataclass(frozen=True)
class Item:
    pass


@dataclass(frozen=True)
class FormulaItem(Item):
    formula: Formula

    def __str__(self) -> str:
        return print_formula(self.formula)


@dataclass(frozen=True)
class BracketItem(Item):
    content: "Context"
    bound: frozenset[str]

    def __str__(self) -> str:
        return f"[{self.content}]_{{{','.join(sorted(self.bound))}}}"


@dataclass(frozen=True)
class Context:
    items: tuple[Item, ...] = ()

    def __str__(self) -> str:
        return ", ".join(str(item) for item in self.items)

    def __iter__(self) -> Iterator[Item]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)


@lru_cache(maxsize=None)
def free_vars_ctx(x: Context | Item) -> frozenset[str]:
    """Free variables of a context or item; a bracket subtracts its bound set."""
    if isinstance(x, Context):
        out: frozenset[str] = frozenset()
        for item in x.items:
            out |= free_vars_ctx(item)
        return out
    if isinstance(x, FormulaItem):
        return free_vars(x.formula)
    return free_vars_ctx(x.content) - x.bound


def measure(x: Context | Item) -> int:
    """Termination measure of cleaning: a formula weighs 1, a bracket weighs
    one plus twice its content, a context the sum of its items."""
    if isinstance(x, Context):
        return sum(measure(item) for item in x.items)
    if isinstance(x, FormulaItem):
        return 1
    return 1 + 2 * measure(x.content)


def depth(x: Context | Item) -> int:
    """Maximum bracket nesting."""
    if isinstance(x, Context):
        return max((depth(item) for item in x.items), default=0)
    if isinstance(x, FormulaItem):
        return 0
    return 1 + depth(x.content)


@lru_cache(maxsize=None)
def _item_key(item: Item):
    # Formula items sort before bracket items.  The printed form of a formula
    # is injective (it round-trips), so on clean contexts key equality is
    # item equality.
    if isinstance(item, FormulaItem):
        return (0, print_formula(item.formula))
    return (1, tuple(sorted(item.bound)), tuple(_item_key(i) for i in item.content.items))


def _canonical(items: Iterable[Item]) -> Context:
    ordered = sorted(items, key=_item_key)
    unique: list[Item] = []
    for item in ordered:
        if not unique or item != unique[-1]:
            unique.append(item)
    return Context(tuple(unique))


def _norm_item(item: Item) -> list[Item]:
    if isinstance(item, FormulaItem):
        return [item]
    inner = normalize(item.content)
    kept = tuple(i for i in inner.items if free_vars_ctx(i) & item.bound)
    out = [i for i in inner.items if not free_vars_ctx(i) & item.bound]
    if kept:
        out.append(BracketItem(Context(kept), item.bound))
    return out


def normalize(c: Context) -> Context:
    """Clean a context with a fixed strategy.

    Bracket contents are cleaned innermost first, items with no free variable
    in the bound set are hoisted out, empty brackets are dropped, and every
    level is sorted and deduplicated.  Deterministic and idempotent; the
    result is reachable from ``c`` by the three cleaning rules.
    """
    flat: list[Item] = []
    for item in c.items:
        flat.extend(_norm_item(item))
    return _canonical(flat)


def is_clean(c: Context | Item) -> bool:
    """True iff no cleaning rule applies anywhere in ``c`` and every level is
    sorted by the canonical item order with no duplicates."""
    if isinstance(c, FormulaItem):
        return True
    if isinstance(c, BracketItem):
        if not c.content.items:
            return False
        if any(not (free_vars_ctx(i) & c.bound) for i in c.content.items):
            return False
        return is_clean(c.content)
    keys = [_item_key(i) for i in c.items]
    if any(k2 <= k1 for k1, k2 in zip(keys, keys[1:])):
        return False
    return all(is_clean(i) for i in c.items)


def fuse(a: Context, b: Context) -> Context:
    """Canonical form of the union of two clean contexts.

    A sorted merge in which duplicates collapse; equals ``normalize`` of the
    multiset union, without the re-cleaning.
    """
    ia, ib = a.items, b.items
    out: list[Item] = []
    i = j = 0
    while i < len(ia) and j < len(ib):
        ka, kb = _item_key(ia[i]), _item_key(ib[j])
        if ka == kb:
            out.append(ia[i])
            i += 1
            j += 1
        elif ka < kb:
            out.append(ia[i])
            i += 1
        else:
            out.append(ib[j])
            j += 1
    out.extend(ia[i:])
    out.extend(ib[j:])
    return Context(tuple(out))


def bracket(c: Context, bound: Iterable[str]) -> Context:
    """Canonical form of putting the clean context ``c`` under a bracket
    binding ``bound``.

    Items with no free variable in ``bound`` stay at the outer level; the
    rest go under a single bracket.  If nothing needs binding, no bracket is
    created at all.
    """
    v = frozenset(bound)
    inside = tuple(i for i in c.items if free_vars_ctx(i) & v)
    if not inside:
        return c
    outside = tuple(i for i in c.items if not free_vars_ctx(i) & v)
    return fuse(Context(outside), Context((BracketItem(Context(inside), v),)))


# ---------------------------------------------------------------------------
# Debug syntax: the inverse of ``str`` on contexts, used by the CLI


def _parse_item(ts: _TokenStream) -> Item:
    if ts.peek() != "[":
        return FormulaItem(_parse_formula(ts))
    ts.advance()
    inner: list[Item] = []
    if ts.peek() != "]":
        inner.append(_parse_item(ts))
        while ts.peek() == ",":
            ts.advance()
            inner.append(_parse_item(ts))
    ts.expect("]")
    ts.expect("_")
    ts.expect("{")
    names = [ts.ident()]
    while ts.peek() == ",":
        ts.advance()
        names.append(ts.ident())
    ts.expect("}")
    return BracketItem(Context(tuple(inner)), frozenset(names))


def parse_context(text: str) -> Context:
    """Parse the debug serialization of a context.

    Items are comma separated and a bracket is written ``[G]_{x,y}``.  The
    result is exactly what was written, possibly dirty; pass it through
    ``normalize`` to clean it.
    """
    ts = _TokenStream(text)
    items: list[Item] = []
    if ts.peek() is not None:
        items.append(_parse_item(ts))
        while ts.peek() == ",":
            ts.advance()
            items.append(_parse_item(ts))
    ts.finish()
    return Context(tuple(items))
