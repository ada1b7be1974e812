"""Canonical forms and the string keys used for state deduplication.

The rewrite system, applied innermost-first to a fixed point:

  S1  0;Q            -> Q
  S2  0 ||{A} 0      -> 0            (any sync set)
  S3  P-P -> P,  P+P -> P            (after canonicalizing operands)
  S4  operands of -, + and ||{A} sorted by key; P*{r}Q with the bigger
      key first becomes Q*{1-r}P
  S5  P*{1}Q -> P,  P*{0}Q -> Q      (applied before the dead branch is
                                      visited, so unreachable operands
                                      cannot fail the unfold budget)

Each rule preserves strong bisimilarity, so merging states with equal
keys never changes the behaviour of the transition system.

Variables in unguarded positions (the root, operands of choices and
parallel, the left of ';') are unfolded so that a definition and its
body get the same key; variables under an action guard stay folded,
which keeps keys finite for recursive definitions. The shared unfold
budget turns unguarded recursion into an error.
"""

from __future__ import annotations

from .process import (
    NIL,
    DefinitionEnv,
    ExtChoice,
    IntChoice,
    Nil,
    Par,
    Prefix,
    ProbChoice,
    Process,
    Seq,
    Var,
    pretty_print,
)
from .semantics import DEFAULT_MAX_UNFOLD, _Budget, _unfold


def canonicalize(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> Process:
    """The unique fixed point of the rewrite system above."""
    return _canon(p, env, _Budget(max_unfold), guarded=False)


def canonical_key(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> str:
    """Printed canonical form; equal keys iff equal canonical forms."""
    return pretty_print(canonicalize(p, env, max_unfold))


def _canon(
    p: Process, env: DefinitionEnv, budget: _Budget, guarded: bool
) -> Process:
    if isinstance(p, Var):
        if guarded:
            return p
        return _canon(
            _unfold(p, env, budget), env, budget, guarded=False
        )
    if isinstance(p, Nil):
        return p
    if isinstance(p, Prefix):
        cont = _canon(p.continuation, env, budget, guarded=True)
        return p if cont == p.continuation else Prefix(p.action, p.rate, cont)
    if isinstance(p, Seq):
        left = _canon(p.left, env, budget, guarded)
        if left == NIL:
            # S1 exposes the right operand at this position.
            return _canon(p.right, env, budget, guarded)
        right = _canon(p.right, env, budget, guarded=True)
        return Seq(left, right)
    if isinstance(p, (IntChoice, ExtChoice)):
        left = _canon(p.left, env, budget, guarded)
        right = _canon(p.right, env, budget, guarded)
        if left == right:
            return left
        if pretty_print(right) < pretty_print(left):
            left, right = right, left
        ctor = type(p)
        return ctor(left, right)
    if isinstance(p, ProbChoice):
        if p.prob == 1.0:
            return _canon(p.left, env, budget, guarded)
        if p.prob == 0.0:
            return _canon(p.right, env, budget, guarded)
        prob = p.prob
        left = _canon(p.left, env, budget, guarded)
        right = _canon(p.right, env, budget, guarded)
        if pretty_print(right) < pretty_print(left):
            left, right = right, left
            prob = 1.0 - prob
            if prob == 1.0:
                return left
        return ProbChoice(prob, left, right)
    if isinstance(p, Par):
        left = _canon(p.left, env, budget, guarded)
        right = _canon(p.right, env, budget, guarded)
        if left == NIL and right == NIL:
            return NIL
        if pretty_print(right) < pretty_print(left):
            left, right = right, left
        return Par(p.sync, left, right)
    raise TypeError(f"not a Process: {p!r}")
