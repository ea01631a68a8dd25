"""Positive-type inhabitation for System F.

A type is translated homomorphically into a formula over a single unary
predicate ``eps``: a type variable ``X`` becomes ``eps(X)``, arrows become
implications, quantifiers stay quantifiers.  In the positive fragment no
variable is ever substituted, so a positive type is inhabited exactly when its
translation is derivable, and the decision engine answers inhabitation
directly.  General inhabitation is undecidable, so non-positive types are
refused rather than guessed at.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .context import BracketItem, Context, FormulaItem
from .prover import Derivation, NotPositive, SearchStats, Sequent, derivable
from .syntax import (
    Atom,
    Forall,
    Formula,
    Imp,
    Polarity,
    Var,
    _TokenStream,
)

EPS = "eps"


@dataclass(frozen=True)
class FType:
    def __str__(self) -> str:
        return print_type(self)


@dataclass(frozen=True)
class TVar(FType):
    name: str


@dataclass(frozen=True)
class TArrow(FType):
    domain: FType
    codomain: FType


@dataclass(frozen=True)
class TForall(FType):
    var: str
    body: FType


def phi(t: FType) -> Formula:
    """Translate a type to a formula over the unary predicate ``eps``."""
    if isinstance(t, TVar):
        return Atom(EPS, (Var(t.name),))
    if isinstance(t, TArrow):
        return Imp(phi(t.domain), phi(t.codomain))
    return Forall(t.var, phi(t.body))


def type_polarity(t: FType) -> Polarity:
    """Polarity of a type, by the same induction as on formulas.

    Agrees with ``polarity(phi(t))`` for every type.
    """
    pos, neg = _pos_neg(t)
    if pos and neg:
        return Polarity.BOTH
    if pos:
        return Polarity.POSITIVE
    if neg:
        return Polarity.NEGATIVE
    return Polarity.NEITHER


def _pos_neg(t: FType) -> tuple[bool, bool]:
    if isinstance(t, TVar):
        return True, True
    if isinstance(t, TArrow):
        lpos, lneg = _pos_neg(t.domain)
        rpos, rneg = _pos_neg(t.codomain)
        return lneg and rpos, lpos and rneg
    bpos, _ = _pos_neg(t.body)
    return bpos, False


def inhabited(
    t: FType, **search_options
) -> tuple[bool, SearchStats, Optional[Derivation]]:
    """Decide whether the positive type ``t`` has an inhabitant.

    Keyword options are passed through to ``derivable``.  Raises NotPositive
    for types outside the positive fragment.
    """
    if type_polarity(t) not in (Polarity.POSITIVE, Polarity.BOTH):
        raise NotPositive(f"not a positive type: {print_type(t)}")
    return derivable(phi(t), **search_options)


# ---------------------------------------------------------------------------
# Concrete syntax
#
#   type  := "forall" IDENT "." type | arr
#   arr   := atomt ("->" type)?                    right associative
#   atomt := IDENT | "(" type ")"


def _parse_type(ts: _TokenStream) -> FType:
    if ts.peek() == "forall":
        ts.advance()
        var = ts.ident()
        ts.expect(".")
        return TForall(var, _parse_type(ts))
    left = _parse_atomt(ts)
    if ts.peek() == "->":
        ts.advance()
        return TArrow(left, _parse_type(ts))
    return left


def _parse_atomt(ts: _TokenStream) -> FType:
    if ts.peek() == "(":
        ts.advance()
        inner = _parse_type(ts)
        ts.expect(")")
        return inner
    return TVar(ts.ident())


def parse_type(text: str) -> FType:
    ts = _TokenStream(text)
    t = _parse_type(ts)
    ts.finish()
    return t


def print_type(t: FType) -> str:
    """Canonical text form of a type; ``parse_type`` inverts it."""
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, TArrow):
        left = print_type(t.domain)
        if not isinstance(t.domain, TVar):
            left = f"({left})"
        return f"{left} -> {print_type(t.codomain)}"
    body = print_type(t.body)
    if isinstance(t.body, TArrow):
        body = f"({body})"
    return f"forall {t.var}. {body}"


# ---------------------------------------------------------------------------
# Readable rendering of translated formulas: ``eps(X)`` shown as ``X``.
# Only for human-facing traces; machine output keeps the full form so that
# it stays parseable.


def compact_eps(f: Formula) -> str:
    if isinstance(f, Atom):
        if f.pred == EPS and len(f.terms) == 1 and isinstance(f.terms[0], Var):
            return f.terms[0].name
        if not f.terms:
            return f.pred
        return f"{f.pred}({', '.join(map(str, f.terms))})"
    if isinstance(f, Imp):
        left = compact_eps(f.left)
        if not isinstance(f.left, Atom):
            left = f"({left})"
        return f"{left} -> {compact_eps(f.right)}"
    body = compact_eps(f.body)
    if isinstance(f.body, Imp):
        body = f"({body})"
    return f"forall {f.var}. {body}"


def _compact_ctx(ctx: Context) -> str:
    parts = []
    for item in ctx.items:
        if isinstance(item, FormulaItem):
            parts.append(compact_eps(item.formula))
        else:
            assert isinstance(item, BracketItem)
            parts.append(f"[{_compact_ctx(item.content)}]_{{{','.join(sorted(item.bound))}}}")
    return ", ".join(parts)


def render_sequent(seq: Sequent) -> str:
    """Sequent rendering for inhabitation traces, with ``eps`` elided."""
    ctx = _compact_ctx(seq.context)
    goal = compact_eps(seq.goal)
    return f"{ctx} |- {goal}" if ctx else f"|- {goal}"
