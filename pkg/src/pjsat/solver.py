"""The decision procedure for probability formulas over justification logic.

Satisfiability goes through four stages: rewrite the formula into a DNF
over probability literals, enumerate the atoms of the formula and keep the
ones a basic evaluation can satisfy, translate each disjunct into an exact
linear system over atom weights, and turn the first feasible system's
solution into a small model with few worlds and small rational weights.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .cspec import ConstantSpec
from .jsem import BasisMismatchError, atom_jsat, eval_under_atom
from .linrat import (
    LinearSystem,
    Rel,
    Row,
    feasible,
    integerize,
    shrink_solution,
)
from .syntax import (
    AtLeast,
    Atom,
    DEFAULT_ATOM_CAP,
    PFormula,
    PNot,
    ParseError,
    atoms_of,
    basis_of,
    parse_jformula,
    rat_str,
    size_p,
    weight_size_bound,
    size_rat,
)


@dataclass(frozen=True)
class PLiteral:
    body: object  # JFormula
    rel: Rel  # Rel.GE or Rel.LT
    threshold: Fraction


@dataclass(frozen=True)
class PDnf:
    disjuncts: tuple  # tuple of tuples of PLiteral


def _p_occurrences(f: PFormula):
    """Distinct AtLeast subformulas in left-to-right traversal order."""
    seen = []

    def walk(g):
        if isinstance(g, AtLeast):
            if g not in seen:
                seen.append(g)
        elif isinstance(g, PNot):
            walk(g.body)
        else:
            walk(g.left)
            walk(g.right)

    walk(f)
    return seen


def _eval_boolean(f: PFormula, assignment) -> bool:
    if isinstance(f, AtLeast):
        return assignment[f]
    if isinstance(f, PNot):
        return not _eval_boolean(f.body, assignment)
    return _eval_boolean(f.left, assignment) and _eval_boolean(f.right, assignment)


def p_dnf(f: PFormula) -> PDnf:
    """Truth-functional DNF over the AtLeast occurrences of f.

    Each AtLeast occurrence is treated as a Boolean variable; a negated
    occurrence becomes a strict < literal.  An empty disjunct list means
    f is truth-functionally unsatisfiable over its occurrences.
    """
    occs = _p_occurrences(f)
    disjuncts = []
    for bits in itertools.product((True, False), repeat=len(occs)):
        assignment = dict(zip(occs, bits))
        if _eval_boolean(f, assignment):
            conj = tuple(
                PLiteral(occ.body, Rel.GE if bit else Rel.LT, occ.threshold)
                for occ, bit in zip(occs, bits)
            )
            disjuncts.append(conj)
    return PDnf(tuple(disjuncts))


def build_system(conj, sat_atoms) -> LinearSystem:
    """One weight variable per satisfiable atom; a total-measure row plus
    one row per literal over the atoms where its body evaluates true."""
    n = len(sat_atoms)
    one = Fraction(1)
    zero = Fraction(0)
    rows = [Row((one,) * n, Rel.EQ, one)]
    for lit in conj:
        coeffs = tuple(
            one if eval_under_atom(lit.body, a) else zero for a in sat_atoms
        )
        rows.append(Row(coeffs, lit.rel, lit.threshold))
    return LinearSystem(tuple(rows), n)


@dataclass(frozen=True)
class SmallModel:
    """Finite probabilistic model: worlds carrying atoms and positive
    rational weights summing to 1; the event algebra is the implicit
    powerset with additive measure."""

    worlds: tuple  # (Atom, Fraction) pairs
    basis: tuple

    def measure(self, body) -> Fraction:
        return sum(
            (w for a, w in self.worlds if eval_under_atom(body, a)),
            Fraction(0),
        )


def check_model(model: SmallModel, f: PFormula) -> bool:
    """Replace every AtLeast by its exact measure comparison and evaluate
    the Boolean structure."""
    needed = set(basis_of(f))
    if not needed <= set(model.basis):
        raise BasisMismatchError("model basis does not cover the formula")

    def go(g):
        if isinstance(g, AtLeast):
            return model.measure(g.body) >= g.threshold
        if isinstance(g, PNot):
            return not go(g.body)
        return go(g.left) and go(g.right)

    return go(f)


def certify_model(model: SmallModel, f: PFormula, cs: ConstantSpec = None):
    """All small-model conditions, as a list of violation strings.

    Checks world count, weight positivity and additivity to 1, weight
    sizes against the certified bound, atom distinctness, per-world atom
    satisfiability (when a constant specification is given), and that the
    model satisfies the formula.
    """
    problems = []
    if len(model.worlds) > size_p(f):
        problems.append(f"too many worlds: {len(model.worlds)} > {size_p(f)}")
    total = sum((w for _, w in model.worlds), Fraction(0))
    if total != 1:
        problems.append(f"weights sum to {total}, not 1")
    bound = weight_size_bound(f)
    for i, (atom, w) in enumerate(model.worlds):
        if w <= 0:
            problems.append(f"world {i + 1} has non-positive weight {w}")
        elif size_rat(w) > bound:
            problems.append(
                f"world {i + 1} weight {w} has size {size_rat(w)} > {bound}"
            )
    atoms = [a for a, _ in model.worlds]
    if len(set(atoms)) != len(atoms):
        problems.append("duplicate atom across worlds")
    if cs is not None:
        for i, (atom, _) in enumerate(model.worlds):
            if not atom_jsat(atom, cs):
                problems.append(f"world {i + 1} atom is not J-satisfiable")
    if not check_model(model, f):
        problems.append("model does not satisfy the formula")
    return problems


def solve_sat(
    f: PFormula,
    cs: ConstantSpec,
    cap: int = DEFAULT_ATOM_CAP,
    on_system=None,
):
    """SAT with a small-model witness (a SmallModel), or None for UNSAT.

    Disjuncts of the DNF are tried in order; the first feasible linear
    system wins.  The emitted model is rebuilt from the shrunk solution
    and re-verified before being returned.
    """
    basis = basis_of(f)
    all_atoms = list(atoms_of(f, cap))
    sat_atoms = [a for a in all_atoms if atom_jsat(a, cs)]
    for conj in p_dnf(f).disjuncts:
        system = build_system(conj, sat_atoms)
        if on_system is not None:
            on_system(system)
        sol = feasible(system)
        if sol is None:
            continue
        int_system, _ = integerize(system)
        small = shrink_solution(int_system, sol)
        worlds = tuple(
            (a, w) for a, w in zip(sat_atoms, small.values) if w > 0
        )
        model = SmallModel(worlds, basis)
        problems = certify_model(model, f, cs)
        if problems:
            raise AssertionError(
                "internal invariant violation: " + "; ".join(problems)
            )
        return model
    return None


def valid(f: PFormula, cs: ConstantSpec, cap: int = DEFAULT_ATOM_CAP) -> bool:
    """True iff the negation is unsatisfiable."""
    return solve_sat(PNot(f), cs, cap) is None


def lift_to_p1(alpha) -> PFormula:
    """Embed a justification formula as 'probability at least 1'."""
    return AtLeast(Fraction(1), alpha)


# --- stable model text format ---

def format_model(model: SmallModel) -> str:
    lines = ["SAT"]
    for i, (atom, w) in enumerate(model.worlds, 1):
        lines.append(f"world {i} weight {rat_str(w)} atom {atom}")
    lines.append("check PASS")
    return "\n".join(lines)


class ModelFormatError(ValueError):
    pass


_WORLD_RE = re.compile(r"world\s+(\d+)\s+weight\s+(\d+)(?:/(\d+))?\s+atom\s+(.*)$")


def parse_model(text: str, f: PFormula) -> SmallModel:
    """Parse the line-oriented model format against a formula's basis."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "SAT":
        raise ModelFormatError("model file must start with 'SAT'")
    basis = basis_of(f)
    index = {b: i for i, b in enumerate(basis)}
    worlds = []
    for ln in lines[1:]:
        ln = ln.strip()
        if ln.startswith("check"):
            continue
        m = _WORLD_RE.match(ln)
        if m is None:
            raise ModelFormatError(f"bad model line: {ln!r}")
        num, den = int(m.group(2)), int(m.group(3) or 1)
        if den == 0:
            raise ModelFormatError("zero denominator in weight")
        weight = Fraction(num, den)
        try:
            conj = parse_jformula(m.group(4))
        except ParseError as exc:
            raise ModelFormatError(f"bad atom string: {exc}") from exc
        signs = [None] * len(basis)
        for basic, sign in _conjunct_literals(conj):
            if basic not in index:
                raise ModelFormatError(f"atom literal outside basis: {basic}")
            signs[index[basic]] = sign
        if any(s is None for s in signs):
            raise ModelFormatError("atom does not cover the formula basis")
        worlds.append((Atom(basis, tuple(signs)), weight))
    return SmallModel(tuple(worlds), basis)


def _conjunct_literals(conj):
    from .syntax import JAnd, JNot, Prop, Assert

    if isinstance(conj, JAnd):
        yield from _conjunct_literals(conj.left)
        yield from _conjunct_literals(conj.right)
    elif isinstance(conj, JNot) and isinstance(conj.body, (Prop, Assert)):
        yield conj.body, False
    elif isinstance(conj, (Prop, Assert)):
        yield conj, True
    else:
        raise ModelFormatError(f"not an atom literal: {conj}")
