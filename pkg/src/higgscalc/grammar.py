"""Expression language for bundles and Higgs systems.

Grammar (ASCII operators, shell friendly):

    expr   := term { "(+)" term }
    term   := factor { "(x)" factor }
    factor := atom
            | "S^" INT "(" expr ")"   | "Wedge^" INT "(" expr ")"
            | "Dual(" expr ")"        | "End0(" expr ")"
            | "det(" expr ")"         | "pr(" expr ")"
            | "Gamma(" INT {"," INT} ")(" expr ")"
            | "(" expr ")"
    atom   := "Omega1" | "Omega" INT | "L^" SINT | "O"
            | "E1" | "E2" | "V" | "U(" INT ")"

The canonical printer emits the same grammar, and parse(print(x)) == x.
A LaTeX printer reproduces the usual display notation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple

from .errors import ParseError
from .labels import FormalBundle, IrrepLabel


# --- abstract syntax ---------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Omega(Expr):
    k: int


@dataclass(frozen=True)
class LPow(Expr):
    e: int


@dataclass(frozen=True)
class Triv(Expr):
    pass


@dataclass(frozen=True)
class NamedSystem(Expr):
    name: str  # "E1", "E2", "V"


@dataclass(frozen=True)
class Unitary(Expr):
    r: int


@dataclass(frozen=True)
class Sum(Expr):
    parts: Tuple[Expr, ...]


@dataclass(frozen=True)
class Tensor(Expr):
    parts: Tuple[Expr, ...]


@dataclass(frozen=True)
class Sym(Expr):
    k: int
    arg: Expr


@dataclass(frozen=True)
class Wedge(Expr):
    k: int
    arg: Expr


@dataclass(frozen=True)
class Dual(Expr):
    arg: Expr


@dataclass(frozen=True)
class End0(Expr):
    arg: Expr


@dataclass(frozen=True)
class Det(Expr):
    arg: Expr


@dataclass(frozen=True)
class Primitive(Expr):
    arg: Expr


@dataclass(frozen=True)
class Gamma(Expr):
    indices: Tuple[int, ...]
    arg: Expr


# --- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<oplus>\(\+\))
  | (?P<otimes>\(x\))
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<caret>\^)
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(src)))
    return tokens


# --- parser ------------------------------------------------------------------

_PREFIX_OPS = {"Dual": Dual, "End0": End0, "det": Det, "pr": Primitive}


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {tok.text!r}", tok.pos)
        return e

    def expr(self) -> Expr:
        parts = [self.term()]
        while self.peek().kind == "oplus":
            self.advance()
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def term(self) -> Expr:
        parts = [self.factor()]
        while self.peek().kind == "otimes":
            self.advance()
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Tensor(tuple(parts))

    def factor(self) -> Expr:
        tok = self.peek()
        if tok.kind == "lparen":
            self.advance()
            e = self.expr()
            self.expect("rparen", "')'")
            return e
        if tok.kind == "name":
            return self.named(self.advance())
        raise ParseError(f"expected an expression, found {tok.text or 'end of input'!r}", tok.pos)

    def _int(self, what: str) -> int:
        tok = self.expect("int", what)
        return int(tok.text)

    def _paren_arg(self) -> Expr:
        self.expect("lparen", "'('")
        e = self.expr()
        self.expect("rparen", "')'")
        return e

    def named(self, tok: Token) -> Expr:
        name = tok.text
        if name in ("S", "Wedge"):
            self.expect("caret", f"'^' after {name}")
            k = self._int("an integer exponent")
            if k < 0:
                raise ParseError(f"{name}^ power must be nonnegative", tok.pos)
            arg = self._paren_arg()
            return Sym(k, arg) if name == "S" else Wedge(k, arg)
        if name in _PREFIX_OPS:
            return _PREFIX_OPS[name](self._paren_arg())
        if name == "Gamma":
            self.expect("lparen", "'(' after Gamma")
            indices = [self._int("a Gamma index")]
            while self.peek().kind == "comma":
                self.advance()
                indices.append(self._int("a Gamma index"))
            self.expect("rparen", "')'")
            if any(a < 0 for a in indices):
                raise ParseError("Gamma indices must be nonnegative", tok.pos)
            arg = self._paren_arg()
            return Gamma(tuple(indices), arg)
        if name == "L":
            self.expect("caret", "'^' after L")
            return LPow(self._int("an integer exponent"))
        if name == "O":
            return Triv()
        if name == "Omega1":
            return Omega(1)
        if re.fullmatch(r"Omega\d+", name):
            return Omega(int(name[5:]))
        if name == "Omega":
            # Allow a space between Omega and its degree.
            return Omega(self._int("a form degree after Omega"))
        if name in ("E1", "E2", "V"):
            return NamedSystem(name)
        if name == "U":
            self.expect("lparen", "'(' after U")
            r = self._int("a rank")
            if r < 0:
                raise ParseError("unitary rank must be nonnegative", tok.pos)
            self.expect("rparen", "')'")
            return Unitary(r)
        raise ParseError(f"unknown identifier {name!r}", tok.pos)


def parse_expr(src: str) -> Expr:
    """Parse expression text into an AST; diagnostics carry byte offsets."""
    return _Parser(src).parse()


# --- canonical printer -------------------------------------------------------

def print_expr(e: Expr) -> str:
    return _print(e, 0)


def _print(e: Expr, level: int) -> str:
    # level 0: expr position, 1: term position (sum needs parens).
    if isinstance(e, Sum):
        s = " (+) ".join(_print(p, 1) for p in e.parts)
        return f"({s})" if level >= 1 else s
    if isinstance(e, Tensor):
        s = " (x) ".join(_print(p, 2) for p in e.parts)
        return f"({s})" if level >= 2 else s
    if isinstance(e, Sym):
        return f"S^{e.k}({_print(e.arg, 0)})"
    if isinstance(e, Wedge):
        return f"Wedge^{e.k}({_print(e.arg, 0)})"
    if isinstance(e, Dual):
        return f"Dual({_print(e.arg, 0)})"
    if isinstance(e, End0):
        return f"End0({_print(e.arg, 0)})"
    if isinstance(e, Det):
        return f"det({_print(e.arg, 0)})"
    if isinstance(e, Primitive):
        return f"pr({_print(e.arg, 0)})"
    if isinstance(e, Gamma):
        idx = ",".join(str(a) for a in e.indices)
        return f"Gamma({idx})({_print(e.arg, 0)})"
    if isinstance(e, Omega):
        return "Omega1" if e.k == 1 else f"Omega{e.k}"
    if isinstance(e, LPow):
        return f"L^{e.e}"
    if isinstance(e, Triv):
        return "O"
    if isinstance(e, NamedSystem):
        return e.name
    if isinstance(e, Unitary):
        return f"U({e.r})"
    raise TypeError(f"not an expression: {e!r}")


# --- label and bundle printers -----------------------------------------------

def label_expr(label: IrrepLabel) -> Expr:
    """Canonical expression for one irreducible label."""
    lam, e, n = label.lam, label.l_twist, label.n
    core = _lam_core_expr(lam, n)
    if core is None:
        return LPow(e) if e else Triv()
    if e == 0:
        return core
    return Tensor((core, LPow(e)))


def _lam_core_expr(lam, n):
    if all(v == 0 for v in lam):
        return None
    # Wedge powers of the generator: (1,...,1,0,...).
    if set(lam) <= {0, 1}:
        k = sum(lam)
        return Omega(1) if k == 1 else Omega(k)
    # Symmetric powers of the generator: (k,0,...).
    if all(v == 0 for v in lam[1:]):
        return Sym(lam[0], Omega(1))
    # Symmetric powers of the top-but-one wedge: (k,...,k,0).
    if all(v == lam[0] for v in lam[: n - 1]):
        return Sym(lam[0], Omega(n - 1))
    # Everything else by successive differences.
    indices = tuple(lam[i] - lam[i + 1] for i in range(n - 1))
    return Gamma(indices, Omega(1))


def bundle_expr(b: FormalBundle) -> Expr:
    """Canonical expression for a formal bundle (multiplicities as copies)."""
    parts = []
    for label, m in b.entries:
        parts.extend([label_expr(label)] * m)
    if not parts:
        raise ValueError("the zero bundle has no expression")
    return parts[0] if len(parts) == 1 else Sum(tuple(parts))


def print_bundle(b: FormalBundle) -> str:
    if b.is_zero():
        return "0"
    return print_expr(bundle_expr(b))


# --- LaTeX printer -----------------------------------------------------------

_OMEGA_TEX = r"\Omega^{%d}_{\overline{X}}(\log D)"


def latex_label(label: IrrepLabel) -> str:
    lam, e, n = label.lam, label.l_twist, label.n
    core = None
    if any(lam):
        if set(lam) <= {0, 1}:
            core = _OMEGA_TEX % sum(lam)
        elif all(v == 0 for v in lam[1:]):
            core = r"S^{%d}%s" % (lam[0], _OMEGA_TEX % 1)
        elif n >= 2 and all(v == lam[0] for v in lam[: n - 1]):
            core = r"S^{%d}%s" % (lam[0], _OMEGA_TEX % (n - 1))
        else:
            idx = ",".join(str(lam[i] - lam[i + 1]) for i in range(n - 1))
            core = r"\Gamma_{%s}\left(%s\right)" % (idx, _OMEGA_TEX % 1)
    if core is None:
        if e == 0:
            return r"{\mathcal O}_{\overline{X}}"
        return "L" if e == 1 else r"L^{%d}" % e
    if e == 0:
        return core
    tail = "L" if e == 1 else r"L^{%d}" % e
    return r"%s \otimes %s" % (core, tail)


def latex_bundle(b: FormalBundle) -> str:
    if b.is_zero():
        return "0"
    parts = []
    for label, m in b.entries:
        tex = latex_label(label)
        parts.append(tex if m == 1 else r"%d\left(%s\right)" % (m, tex))
    return r" \oplus ".join(parts)
