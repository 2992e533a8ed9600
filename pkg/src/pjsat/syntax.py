"""Abstract syntax, parsing, printing and structural measures.

Three layers of syntax:

  * justification terms: constants, variables, application (.), sum (+)
    and the proof-checker prefix (!);
  * justification formulas: propositions p<i>, negation, conjunction and
    assertions ``t : body``;
  * probability formulas: ``P>=s body``, negation and conjunction.

All nodes are frozen dataclasses, so values are hashable and shareable.
Thresholds are stored as reduced ``fractions.Fraction`` in [0, 1].
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction


class ParseError(ValueError):
    """Raised on malformed input; carries the character position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class EnumerationLimitError(RuntimeError):
    """Raised when an atom enumeration would exceed the configured cap."""


# --- terms ---

@dataclass(frozen=True)
class Const:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("constant name must be nonempty")


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Sum:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Bang:
    inner: "Term"


Term = Const | Var | App | Sum | Bang


# --- justification formulas ---

@dataclass(frozen=True)
class Prop:
    index: int


@dataclass(frozen=True)
class JNot:
    body: "JFormula"


@dataclass(frozen=True)
class JAnd:
    left: "JFormula"
    right: "JFormula"


@dataclass(frozen=True)
class Assert:
    term: Term
    body: "JFormula"


JFormula = Prop | JNot | JAnd | Assert


# --- probability formulas ---

@dataclass(frozen=True)
class AtLeast:
    threshold: Fraction
    body: JFormula

    def __post_init__(self):
        if not (0 <= self.threshold <= 1):
            raise ValueError(f"threshold {self.threshold} outside [0,1]")


@dataclass(frozen=True)
class PNot:
    body: "PFormula"


@dataclass(frozen=True)
class PAnd:
    left: "PFormula"
    right: "PFormula"


PFormula = AtLeast | PNot | PAnd


def jand_all(parts):
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = JAnd(out, p)
    return out


def jimp(a, b):
    """Implication sugar, stored desugared as ~(a & ~b)."""
    return JNot(JAnd(a, JNot(b)))


# --- printing ---

def rat_str(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def term_str(t: Term, prec: int = 0) -> str:
    # precedence: 0 = sum, 1 = application, 2 = primary
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Bang):
        return "!" + term_str(t.inner, 2)
    if isinstance(t, Sum):
        s = f"{term_str(t.left, 0)}+{term_str(t.right, 1)}"
        return f"({s})" if prec > 0 else s
    if isinstance(t, App):
        s = f"{term_str(t.left, 1)}.{term_str(t.right, 2)}"
        return f"({s})" if prec > 1 else s
    raise TypeError(f"not a term: {t!r}")


def jformula_str(f: JFormula, prec: int = 0) -> str:
    # precedence: 0 = conjunction, 1 = factor
    if isinstance(f, Prop):
        return f"p{f.index}"
    if isinstance(f, JNot):
        return "~" + jformula_str(f.body, 1)
    if isinstance(f, Assert):
        return f"{term_str(f.term)}:{jformula_str(f.body, 1)}"
    if isinstance(f, JAnd):
        s = f"{jformula_str(f.left, 0)} & {jformula_str(f.right, 1)}"
        return f"({s})" if prec > 0 else s
    raise TypeError(f"not a justification formula: {f!r}")


def pformula_str(f: PFormula, prec: int = 0) -> str:
    if isinstance(f, AtLeast):
        return f"P>={rat_str(f.threshold)} {jformula_str(f.body, 1)}"
    if isinstance(f, PNot):
        return "~" + pformula_str(f.body, 1)
    if isinstance(f, PAnd):
        s = f"{pformula_str(f.left, 0)} & {pformula_str(f.right, 1)}"
        return f"({s})" if prec > 0 else s
    raise TypeError(f"not a probability formula: {f!r}")


# --- lexer / parser ---

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<pge>P>=)
  | (?P<plt>P<)
  | (?P<arrow>->)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<num>\d+)
  | (?P<sym>[~&():.+!/|])
    """,
    re.VERBOSE,
)

_PROP_RE = re.compile(r"p\d+$")
_VAR_RE = re.compile(r"x\d+$")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            if kind == "name":
                if _PROP_RE.match(val):
                    kind = "prop"
                elif _VAR_RE.match(val):
                    kind = "var"
                else:
                    kind = "const"
            elif kind == "sym":
                kind = val
            tokens.append((kind, val, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def fail(self, message):
        tok = self.tokens[self.i]
        raise ParseError(message, tok[2])

    # terms

    def term(self):
        t = self.tfactor()
        while self.peek() == "+":
            self.next()
            t = Sum(t, self.tfactor())
        return t

    def tfactor(self):
        t = self.tprim()
        while self.peek() == ".":
            self.next()
            t = App(t, self.tprim())
        return t

    def tprim(self):
        kind = self.peek()
        if kind == "!":
            self.next()
            return Bang(self.tprim())
        if kind == "const":
            return Const(self.next()[1])
        if kind == "var":
            return Var(int(self.next()[1][1:]))
        if kind == "(":
            self.next()
            t = self.term()
            self.expect(")")
            return t
        self.fail("expected a term")

    # justification formulas (with '->' and '|' sugar)

    def jformula(self):
        left = self.jor()
        if self.peek() == "arrow":
            self.next()
            right = self.jformula()
            return jimp(left, right)
        return left

    def jor(self):
        f = self.jand()
        while self.peek() == "|":
            self.next()
            g = self.jand()
            f = JNot(JAnd(JNot(f), JNot(g)))
        return f

    def jand(self):
        f = self.jfactor()
        while self.peek() == "&":
            self.next()
            f = JAnd(f, self.jfactor())
        return f

    def jfactor(self):
        kind = self.peek()
        if kind == "~":
            self.next()
            return JNot(self.jfactor())
        if kind == "prop":
            return Prop(int(self.next()[1][1:]))
        if kind in ("const", "var", "!"):
            t = self.term()
            self.expect(":")
            return Assert(t, self.jfactor())
        if kind == "(":
            # '(' opens either a parenthesized formula or a term before ':'
            save = self.i
            try:
                t = self.term()
                self.expect(":")
                return Assert(t, self.jfactor())
            except ParseError:
                self.i = save
            self.next()
            f = self.jformula()
            self.expect(")")
            return f
        self.fail("expected a justification formula")

    # probability formulas

    def pformula(self):
        f = self.pfactor()
        while self.peek() == "&":
            self.next()
            f = PAnd(f, self.pfactor())
        return f

    def pfactor(self):
        kind = self.peek()
        if kind == "~":
            self.next()
            return PNot(self.pfactor())
        if kind == "(":
            self.next()
            f = self.pformula()
            self.expect(")")
            return f
        if kind in ("pge", "plt"):
            self.next()
            s = self.rational()
            body = self.jfactor()
            if kind == "pge":
                return AtLeast(s, body)
            return PNot(AtLeast(s, body))
        self.fail("expected a probability formula")

    def rational(self):
        tok = self.expect("num")
        num = int(tok[1])
        den = 1
        if self.peek() == "/":
            self.next()
            den = int(self.expect("num")[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2])
        r = Fraction(num, den)
        if not (0 <= r <= 1):
            raise ParseError(f"threshold {num}/{den} outside [0,1]", tok[2])
        return r


def parse_pformula(text: str) -> PFormula:
    p = _Parser(text)
    f = p.pformula()
    p.expect("eof")
    return f


def parse_jformula(text: str) -> JFormula:
    p = _Parser(text)
    f = p.jformula()
    p.expect("eof")
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.expect("eof")
    return t


# --- structural measures ---

def subf(f):
    """The recursively defined subformula set; mixes both languages for
    probability formulas."""
    if isinstance(f, Prop):
        return frozenset({f})
    if isinstance(f, (JNot, PNot)):
        return frozenset({f}) | subf(f.body)
    if isinstance(f, (JAnd, PAnd)):
        return frozenset({f}) | subf(f.left) | subf(f.right)
    if isinstance(f, Assert):
        return frozenset({f}) | subf(f.body)
    if isinstance(f, AtLeast):
        return frozenset({f}) | subf(f.body)
    raise TypeError(f"not a formula: {f!r}")


def basis_of(f):
    """All propositions and justification assertions among the subformulas,
    in canonical order: propositions ascending by index, then assertions
    ascending by printed string."""
    props = set()
    asserts = set()
    for g in subf(f):
        if isinstance(g, Prop):
            props.add(g)
        elif isinstance(g, Assert):
            asserts.add(g)
    ordered = sorted(props, key=lambda p: p.index)
    ordered += sorted(asserts, key=jformula_str)
    return tuple(ordered)


@dataclass(frozen=True)
class Atom:
    """A signed conjunction over a basis of basic formulas.

    ``signs[i]`` is True when ``basis[i]`` occurs positively.
    """

    basis: tuple
    signs: tuple

    def __post_init__(self):
        if len(self.basis) != len(self.signs):
            raise ValueError("basis and signs lengths differ")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis entries must be pairwise distinct")

    def sign_map(self):
        return dict(zip(self.basis, self.signs))

    def literals(self):
        return tuple(zip(self.basis, self.signs))

    def __str__(self):
        parts = []
        for b, sign in zip(self.basis, self.signs):
            s = jformula_str(b, 1)
            parts.append(s if sign else "~" + s)
        return " & ".join(parts)

    def as_jformula(self) -> JFormula:
        lits = [b if sign else JNot(b) for b, sign in zip(self.basis, self.signs)]
        return jand_all(lits)


DEFAULT_ATOM_CAP = 20


def atoms_of(f, cap: int = DEFAULT_ATOM_CAP):
    """Yield all 2^|basis| atoms of f, each exactly once, in a fixed order."""
    basis = basis_of(f)
    if len(basis) == 0:
        raise ValueError("formula has no basic subformulas")
    if len(basis) > cap:
        raise EnumerationLimitError(
            f"basis has {len(basis)} entries, enumeration cap is {cap}"
        )
    for signs in itertools.product((True, False), repeat=len(basis)):
        yield Atom(basis, signs)


def size_p(f: PFormula) -> int:
    if isinstance(f, AtLeast):
        return 2
    if isinstance(f, PNot):
        return 1 + size_p(f.body)
    if isinstance(f, PAnd):
        return size_p(f.left) + 1 + size_p(f.right)
    raise TypeError(f"not a probability formula: {f!r}")


def size_int(n: int) -> int:
    """Binary length, with |0| = 1."""
    if n < 0:
        raise ValueError("size is defined for non-negative integers")
    return 1 if n == 0 else n.bit_length()


def size_rat(r: Fraction) -> int:
    """|numerator| + |denominator| for the reduced representation.

    Fraction always stores reduced form; 0 is 0/1 with size 1 + 1 = 2.
    """
    if r < 0:
        raise ValueError("size is defined for non-negative rationals")
    return size_int(r.numerator) + size_int(r.denominator)


def norm(f: PFormula) -> int:
    """Max size over all thresholds occurring in f."""
    return max(size_rat(g.threshold) for g in subf(f) if isinstance(g, AtLeast))


def weight_size_bound(f: PFormula) -> int:
    """Certified cap on the size of each world weight in a small model of f."""
    n = size_p(f)
    return math.floor(2 * (n * norm(f) + n * math.log2(n) + 1))
