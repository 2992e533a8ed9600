"""Justification semantics at the atom level.

An atom fixes a sign for every basic subformula of some formula.  Whether
the atom is satisfiable by a basic evaluation comes down to a closure
question: the positive assertions together with the constant specification
generate a minimal evidence assignment, closed under the application and
sum conditions, and the atom is satisfiable iff none of its negated
assertions falls inside that closure.  Membership is decided by a
goal-directed search over the term structure, with first-order unification
over the two-sorted pattern language (formula and term metavariables).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cspec import ConstantSpec, FMeta, TMeta, scheme_named
from .syntax import (
    App,
    Assert,
    Atom,
    Bang,
    Const,
    JAnd,
    JNot,
    Prop,
    Sum,
    Var,
    atoms_of,
    DEFAULT_ATOM_CAP,
)


class BasisMismatchError(ValueError):
    """A formula mentions a basic subformula outside the atom's basis."""


# --- substitutions over the two-sorted pattern language ---
#
# A substitution is a dict mapping metavariable names to patterns; formula
# and term metavariable names never collide because every binding is keyed
# by the metavariable node itself.

def subst_apply(pat, subst):
    """Apply a substitution to a formula or term pattern."""
    if isinstance(pat, (FMeta, TMeta)):
        bound = subst.get(pat)
        return pat if bound is None else subst_apply(bound, subst)
    if isinstance(pat, (Prop, Const, Var)):
        return pat
    if isinstance(pat, JNot):
        return JNot(subst_apply(pat.body, subst))
    if isinstance(pat, JAnd):
        return JAnd(subst_apply(pat.left, subst), subst_apply(pat.right, subst))
    if isinstance(pat, Assert):
        return Assert(subst_apply(pat.term, subst), subst_apply(pat.body, subst))
    if isinstance(pat, App):
        return App(subst_apply(pat.left, subst), subst_apply(pat.right, subst))
    if isinstance(pat, Sum):
        return Sum(subst_apply(pat.left, subst), subst_apply(pat.right, subst))
    if isinstance(pat, Bang):
        return Bang(subst_apply(pat.inner, subst))
    raise TypeError(f"bad pattern: {pat!r}")


def _occurs(meta, pat, subst):
    if isinstance(pat, (FMeta, TMeta)):
        if pat == meta:
            return True
        bound = subst.get(pat)
        return bound is not None and _occurs(meta, bound, subst)
    if isinstance(pat, (Prop, Const, Var)):
        return False
    if isinstance(pat, (JNot,)):
        return _occurs(meta, pat.body, subst)
    if isinstance(pat, (JAnd, App, Sum)):
        return _occurs(meta, pat.left, subst) or _occurs(meta, pat.right, subst)
    if isinstance(pat, Assert):
        return _occurs(meta, pat.term, subst) or _occurs(meta, pat.body, subst)
    if isinstance(pat, Bang):
        return _occurs(meta, pat.inner, subst)
    raise TypeError(f"bad pattern: {pat!r}")


def _resolve(pat, subst):
    while isinstance(pat, (FMeta, TMeta)) and pat in subst:
        pat = subst[pat]
    return pat


def unify(x, y, subst):
    """Most general unifier extending subst, or None on failure.

    Patterns are formula or term patterns; the result maps metavariable
    nodes to patterns and passes the occurs-check.
    """
    x = _resolve(x, subst)
    y = _resolve(y, subst)
    if x == y:
        return subst
    if isinstance(x, (FMeta, TMeta)):
        if _occurs(x, y, subst):
            return None
        out = dict(subst)
        out[x] = y
        return out
    if isinstance(y, (FMeta, TMeta)):
        return unify(y, x, subst)
    if isinstance(x, JNot) and isinstance(y, JNot):
        return unify(x.body, y.body, subst)
    if isinstance(x, JAnd) and isinstance(y, JAnd):
        s = unify(x.left, y.left, subst)
        return None if s is None else unify(x.right, y.right, s)
    if isinstance(x, Assert) and isinstance(y, Assert):
        s = unify(x.term, y.term, subst)
        return None if s is None else unify(x.body, y.body, s)
    if isinstance(x, App) and isinstance(y, App):
        s = unify(x.left, y.left, subst)
        return None if s is None else unify(x.right, y.right, s)
    if isinstance(x, Sum) and isinstance(y, Sum):
        s = unify(x.left, y.left, subst)
        return None if s is None else unify(x.right, y.right, s)
    if isinstance(x, Bang) and isinstance(y, Bang):
        return unify(x.inner, y.inner, subst)
    return None


def _rename_pattern(pat, mapping, fresh):
    """Rename a scheme's metavariables apart with fresh names."""
    if isinstance(pat, FMeta):
        if pat not in mapping:
            mapping[pat] = FMeta(fresh())
        return mapping[pat]
    if isinstance(pat, TMeta):
        if pat not in mapping:
            mapping[pat] = TMeta(fresh())
        return mapping[pat]
    if isinstance(pat, (Prop, Const, Var)):
        return pat
    if isinstance(pat, JNot):
        return JNot(_rename_pattern(pat.body, mapping, fresh))
    if isinstance(pat, JAnd):
        return JAnd(
            _rename_pattern(pat.left, mapping, fresh),
            _rename_pattern(pat.right, mapping, fresh),
        )
    if isinstance(pat, Assert):
        return Assert(
            _rename_pattern(pat.term, mapping, fresh),
            _rename_pattern(pat.body, mapping, fresh),
        )
    if isinstance(pat, App):
        return App(
            _rename_pattern(pat.left, mapping, fresh),
            _rename_pattern(pat.right, mapping, fresh),
        )
    if isinstance(pat, Sum):
        return Sum(
            _rename_pattern(pat.left, mapping, fresh),
            _rename_pattern(pat.right, mapping, fresh),
        )
    if isinstance(pat, Bang):
        return Bang(_rename_pattern(pat.inner, mapping, fresh))
    raise TypeError(f"bad pattern: {pat!r}")


def _fresh_supply():
    counter = itertools.count()
    return lambda: f"_G{next(counter)}"


@dataclass
class AtomContext:
    """The evidence-relevant content of an atom plus a constant spec."""

    positives: tuple  # (Term, JFormula) pairs from positive assertions
    negatives: tuple  # (Term, JFormula) pairs from negated assertions
    prop_signs: dict  # Prop index -> bool
    cs: ConstantSpec

    @classmethod
    def from_atom(cls, atom: Atom, cs: ConstantSpec):
        positives = []
        negatives = []
        prop_signs = {}
        for basic, sign in atom.literals():
            if isinstance(basic, Prop):
                prop_signs[basic.index] = sign
            else:
                (positives if sign else negatives).append((basic.term, basic.body))
        return cls(tuple(positives), tuple(negatives), prop_signs, cs)


def derives(ctx: AtomContext, t, phi, subst=None, fresh=None):
    """Yield every substitution under which phi belongs to the minimal
    evidence set of term t generated by ctx's positives and constant spec.

    Rules: (hyp) positives on exactly t; (cs) scheme/finite entries of a
    constant; (app) t = u.v via an implication with a fresh antecedent;
    (sum) either summand.  '!' and variables admit only (hyp).
    """
    if subst is None:
        subst = {}
    if fresh is None:
        fresh = _fresh_supply()
    for s, gamma in ctx.positives:
        if s == t:
            s2 = unify(gamma, phi, subst)
            if s2 is not None:
                yield s2
    if isinstance(t, Const):
        for sname in sorted(ctx.cs.schemes_of(t.name)):
            pat = _rename_pattern(scheme_named(sname).pattern, {}, fresh)
            s2 = unify(pat, phi, subst)
            if s2 is not None:
                yield s2
        for cname, psi in ctx.cs.finite:
            if cname == t.name:
                s2 = unify(psi, phi, subst)
                if s2 is not None:
                    yield s2
    elif isinstance(t, App):
        antecedent = FMeta(fresh())
        implication = JNot(JAnd(antecedent, JNot(phi)))
        for s1 in derives(ctx, t.left, implication, subst, fresh):
            yield from derives(ctx, t.right, antecedent, s1, fresh)
    elif isinstance(t, Sum):
        yield from derives(ctx, t.left, phi, subst, fresh)
        yield from derives(ctx, t.right, phi, subst, fresh)


def atom_jsat(atom: Atom, cs: ConstantSpec) -> bool:
    """Is the atom satisfiable by some basic evaluation under cs?

    True iff no negated assertion is forced by the minimal closure of the
    positive assertions.  Propositional literals never conflict.
    """
    ctx = AtomContext.from_atom(atom, cs)
    for s, gamma in ctx.negatives:
        if next(derives(ctx, s, gamma), None) is not None:
            return False
    return True


def eval_under_atom(phi, atom: Atom) -> bool:
    """Truth value of phi under the atom's literal assignment."""
    signs = atom.sign_map()

    def go(f):
        if isinstance(f, (Prop, Assert)):
            if f not in signs:
                raise BasisMismatchError(
                    f"basic subformula not in atom basis: {f}"
                )
            return signs[f]
        if isinstance(f, JNot):
            return not go(f.body)
        if isinstance(f, JAnd):
            return go(f.left) and go(f.right)
        raise TypeError(f"not a justification formula: {f!r}")

    return go(phi)


def jformula_sat(alpha, cs: ConstantSpec, cap: int = DEFAULT_ATOM_CAP) -> bool:
    """Satisfiability of a justification formula, by atom enumeration."""
    return any(
        eval_under_atom(alpha, a) and atom_jsat(a, cs)
        for a in atoms_of(alpha, cap)
    )
