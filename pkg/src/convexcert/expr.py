"""A small expression language for functions of one variable ``x``.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | base ("^" factor)?
    base   := number | "x" | "(" expr ")" | ident "(" expr ")"
    ident  := "exp" | "log" | "abs"

Precedence is the usual one — ``^`` binds tightest and associates to
the right, then unary minus, then ``*``/``/``, then ``+``/``-`` — so
``-x^2`` means ``-(x^2)`` and ``2^3^2`` means ``2^(3^2)``.

The module provides parsing, evaluation (both a careful interpreter
with per-node domain errors and a compiled fast path), symbolic
differentiation with light simplification, a printer whose output
re-parses to a structurally identical tree, and a curvature-range
estimator for second derivatives.  ``abs`` is parseable (weights may
need it) but rejected by :func:`differentiate` — weights need not be
differentiable, integrands do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

from .core import (
    CurvatureBounds,
    DomainError,
    Interval,
    NonConstantExponent,
    NonSmoothExpression,
    ParameterOutOfRange,
    ParseError,
    Provenance,
)

__all__ = [
    "Node",
    "Const",
    "Var",
    "Unary",
    "Binary",
    "parse",
    "to_text",
    "evaluate",
    "differentiate",
    "simplify",
    "FunctionSpec",
    "function_spec",
    "evaluation_spec",
    "curvature_range",
]


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

UNARY_OPS = ("neg", "exp", "log", "abs")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")


@dataclass(frozen=True, slots=True)
class Const:
    value: float


@dataclass(frozen=True, slots=True)
class Var:
    pass


@dataclass(frozen=True, slots=True)
class Unary:
    op: str  # one of UNARY_OPS
    arg: "Node"


@dataclass(frozen=True, slots=True)
class Binary:
    op: str  # one of BINARY_OPS
    left: "Node"
    right: "Node"


Node = Union[Const, Var, Unary, Binary]


# --------------------------------------------------------------------------
# Tokenizer
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "lparen" | "rparen" | "end"
    text: str
    pos: int


_OPS = set("+-*/^")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token("op", ch, i))
            i += 1
        elif ch == "(":
            tokens.append(_Token("lparen", ch, i))
            i += 1
        elif ch == ")":
            tokens.append(_Token("rparen", ch, i))
            i += 1
        elif ch.isdigit() or ch == ".":
            start = i
            while i < n and (text[i].isdigit() or text[i] == "."):
                i += 1
            # optional exponent part: e / E, optional sign, digits
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            lit = text[start:i]
            try:
                float(lit)
            except ValueError:
                raise ParseError(f"malformed number {lit!r}", start) from None
            tokens.append(_Token("num", lit, start))
        elif ch.isalpha():
            start = i
            while i < n and text[i].isalnum():
                i += 1
            tokens.append(_Token("ident", text[start:i], start))
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.advance()

    def parse_expr(self) -> Node:
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.parse_term()
            node = Binary("add" if op == "+" else "sub", node, rhs)
        return node

    def parse_term(self) -> Node:
        node = self.parse_factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            rhs = self.parse_factor()
            node = Binary("mul" if op == "*" else "div", node, rhs)
        return node

    def parse_factor(self) -> Node:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            arg = self.parse_factor()
            # Fold a negated literal into a signed constant so that the
            # printer's output for negative constants re-parses to the
            # same tree.
            if isinstance(arg, Const):
                return Const(-arg.value)
            return Unary("neg", arg)
        node = self.parse_base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            expo = self.parse_factor()  # right-associative
            return Binary("pow", node, expo)
        return node

    def parse_base(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "x":
                return Var()
            if tok.text in ("exp", "log", "abs"):
                self.expect("lparen", "'(' after function name")
                arg = self.parse_expr()
                self.expect("rparen", "')'")
                return Unary(tok.text, arg)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.pos)
        if tok.kind == "lparen":
            self.advance()
            node = self.parse_expr()
            self.expect("rparen", "')'")
            return node
        raise ParseError(f"expected a value, found {tok.text or 'end of input'!r}", tok.pos)


def parse(text: str) -> Node:
    """Parse expression text into an AST.

    Raises:
        ParseError: with the byte offset of the offending token.
    """
    parser = _Parser(_tokenize(text))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
    return node


# --------------------------------------------------------------------------
# Printer
# --------------------------------------------------------------------------

# Precedence levels used by the printer: 1 add/sub, 2 mul/div,
# 3 unary minus, 4 pow, 5 atoms.


def _emit(node: Node) -> tuple[str, int]:
    if isinstance(node, Const):
        text = repr(node.value)
        # A negative literal prints with a leading '-' and therefore
        # behaves like a unary-minus expression for parenthesisation.
        return text, (3 if node.value < 0 else 5)
    if isinstance(node, Var):
        return "x", 5
    if isinstance(node, Unary):
        inner, prec = _emit(node.arg)
        if node.op == "neg":
            if prec < 3:
                inner = f"({inner})"
            return f"-{inner}", 3
        return f"{node.op}({inner})", 5
    assert isinstance(node, Binary)
    left, lp = _emit(node.left)
    right, rp = _emit(node.right)
    if node.op in ("add", "sub"):
        sym = "+" if node.op == "add" else "-"
        if lp < 1:
            left = f"({left})"
        # the grammar is left-associative, so an add-level right
        # operand must be parenthesised to survive a round trip
        if rp <= 1:
            right = f"({right})"
        return f"{left} {sym} {right}", 1
    if node.op in ("mul", "div"):
        sym = "*" if node.op == "mul" else "/"
        if lp < 2:
            left = f"({left})"
        if rp <= 2:
            right = f"({right})"
        return f"{left}{sym}{right}", 2
    # pow: right-associative, left operand must be an atom
    if lp < 5:
        left = f"({left})"
    if rp < 3:
        right = f"({right})"
    return f"{left}^{right}", 4


def to_text(node: Node) -> str:
    """Render an AST as expression text.

    The output uses the minimal parenthesisation that still re-parses
    to a structurally identical tree.
    """
    return _emit(node)[0]


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------


def evaluate(node: Node, x: float) -> float:
    """Interpret the AST at ``x`` with per-node domain checking.

    Raises:
        DomainError: carrying the offending sub-node, for ``log`` of a
            nonpositive value, division by zero, or a power that leaves
            the reals.
    """
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Unary):
        v = evaluate(node.arg, x)
        if node.op == "neg":
            return -v
        if node.op == "exp":
            try:
                return math.exp(v)
            except OverflowError:
                return math.inf
        if node.op == "log":
            if v <= 0.0:
                raise DomainError(f"log of nonpositive value {v}", node)
            return math.log(v)
        return abs(v)
    assert isinstance(node, Binary)
    a = evaluate(node.left, x)
    b = evaluate(node.right, x)
    if node.op == "add":
        return a + b
    if node.op == "sub":
        return a - b
    if node.op == "mul":
        return a * b
    if node.op == "div":
        if b == 0.0:
            raise DomainError("division by zero", node)
        return a / b
    try:
        return math.pow(a, b)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"pow({a}, {b}) left the real domain", node) from exc


def _compile(node: Node) -> Callable[[float], float]:
    """Compile an AST to a plain Python callable (the fast path).

    Domain failures surface as ValueError/ZeroDivisionError/Overflow
    from the math layer; :class:`FunctionSpec` maps them to
    :class:`DomainError` at its boundary.
    """

    def src(n: Node) -> str:
        if isinstance(n, Const):
            return repr(n.value)
        if isinstance(n, Var):
            return "x"
        if isinstance(n, Unary):
            inner = src(n.arg)
            if n.op == "neg":
                return f"(-{inner})"
            return f"_{n.op}({inner})"
        assert isinstance(n, Binary)
        a, b = src(n.left), src(n.right)
        if n.op == "pow":
            return f"_pow({a}, {b})"
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[n.op]
        return f"({a} {sym} {b})"

    env = {
        "_exp": math.exp,
        "_log": math.log,
        "_abs": abs,
        "_pow": math.pow,
        "__builtins__": {},
    }
    return eval(f"lambda x: {src(node)}", env)  # noqa: S307 - our own AST


# --------------------------------------------------------------------------
# Differentiation and simplification
# --------------------------------------------------------------------------


def simplify(node: Node) -> Node:
    """Bottom-up constant folding plus the obvious identities.

    Deliberately conservative: it never rewrites in a way that could
    change values on the expression's domain, but (like any CAS-style
    fold) ``0 * u -> 0`` does drop domain errors of ``u``.
    """
    if isinstance(node, (Const, Var)):
        return node
    if isinstance(node, Unary):
        arg = simplify(node.arg)
        if node.op == "neg":
            if isinstance(arg, Const):
                return Const(-arg.value)
            if isinstance(arg, Unary) and arg.op == "neg":
                return arg.arg
            return Unary("neg", arg)
        if isinstance(arg, Const):
            try:
                if node.op == "exp":
                    return Const(math.exp(arg.value))
                if node.op == "log" and arg.value > 0.0:
                    return Const(math.log(arg.value))
                if node.op == "abs":
                    return Const(abs(arg.value))
            except OverflowError:
                pass
        return Unary(node.op, arg)
    assert isinstance(node, Binary)
    a = simplify(node.left)
    b = simplify(node.right)
    ca = a.value if isinstance(a, Const) else None
    cb = b.value if isinstance(b, Const) else None
    if node.op == "add":
        if ca is not None and cb is not None:
            return Const(ca + cb)
        if ca == 0.0:
            return b
        if cb == 0.0:
            return a
    elif node.op == "sub":
        if ca is not None and cb is not None:
            return Const(ca - cb)
        if cb == 0.0:
            return a
        if ca == 0.0:
            return simplify(Unary("neg", b))
    elif node.op == "mul":
        if ca is not None and cb is not None:
            return Const(ca * cb)
        if ca == 0.0 or cb == 0.0:
            return Const(0.0)
        if ca == 1.0:
            return b
        if cb == 1.0:
            return a
        if cb is not None:  # canonical: constant factor on the left
            return Binary("mul", Const(cb), a)
    elif node.op == "div":
        if ca is not None and cb is not None and cb != 0.0:
            return Const(ca / cb)
        if cb == 1.0:
            return a
        if ca == 0.0:
            return Const(0.0)
    else:  # pow
        if ca is not None and cb is not None:
            try:
                return Const(math.pow(ca, cb))
            except (ValueError, OverflowError):
                pass
        if cb == 1.0:
            return a
        if cb == 0.0:
            return Const(1.0)
    return Binary(node.op, a, b)


def differentiate(node: Node) -> Node:
    """Symbolic derivative with respect to ``x``, simplified.

    Raises:
        NonConstantExponent: for ``u ^ v`` with non-constant ``v``.
        NonSmoothExpression: for ``abs`` (weights may use it,
            differentiable integrands must not).
    """
    return simplify(_diff(node))


def _diff(node: Node) -> Node:
    if isinstance(node, Const):
        return Const(0.0)
    if isinstance(node, Var):
        return Const(1.0)
    if isinstance(node, Unary):
        du = _diff(node.arg)
        if node.op == "neg":
            return Unary("neg", du)
        if node.op == "exp":
            return Binary("mul", Unary("exp", node.arg), du)
        if node.op == "log":
            return Binary("div", du, node.arg)
        raise NonSmoothExpression("abs(...) is not differentiable")
    assert isinstance(node, Binary)
    u, v = node.left, node.right
    du, dv = None, None
    if node.op != "pow":
        du, dv = _diff(u), _diff(v)
    if node.op == "add":
        return Binary("add", du, dv)
    if node.op == "sub":
        return Binary("sub", du, dv)
    if node.op == "mul":
        return Binary("add", Binary("mul", du, v), Binary("mul", u, dv))
    if node.op == "div":
        num = Binary("sub", Binary("mul", du, v), Binary("mul", u, dv))
        return Binary("div", num, Binary("pow", v, Const(2.0)))
    # pow with constant exponent: d(u^c) = c * u^(c-1) * u'
    if not isinstance(v, Const):
        raise NonConstantExponent(
            f"cannot differentiate {to_text(node)!r}: exponent must be a constant"
        )
    du = _diff(u)
    scaled = Binary("mul", Const(v.value), Binary("pow", u, Const(v.value - 1.0)))
    return Binary("mul", scaled, du)


# --------------------------------------------------------------------------
# FunctionSpec
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionSpec:
    """An evaluatable function, optionally with symbolic derivatives.

    Calling the spec evaluates the compiled form of ``ast``; raw math
    errors are mapped to :class:`DomainError` at this boundary.  ``d1``
    and ``d2`` are ``None`` for evaluation-only specs (weights).
    """

    ast: Node
    d1: Node | None = None
    d2: Node | None = None
    domain_note: str = ""
    _fn: Callable[[float], float] = field(init=False, repr=False, compare=False)
    _d1fn: Callable[[float], float] | None = field(init=False, repr=False, compare=False)
    _d2fn: Callable[[float], float] | None = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_fn", _compile(self.ast))
        object.__setattr__(self, "_d1fn", _compile(self.d1) if self.d1 is not None else None)
        object.__setattr__(self, "_d2fn", _compile(self.d2) if self.d2 is not None else None)

    @property
    def text(self) -> str:
        return to_text(self.ast)

    def __call__(self, x: float) -> float:
        try:
            return self._fn(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"{self.text} undefined at x={x}: {exc}") from exc
        except OverflowError:
            return math.inf

    def _call_node(self, fn: Callable[[float], float] | None, what: str, x: float) -> float:
        if fn is None:
            raise NonSmoothExpression(f"{what} unavailable for {self.text!r}")
        try:
            return fn(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"{what} of {self.text} undefined at x={x}: {exc}") from exc
        except OverflowError:
            return math.inf

    def derivative(self, x: float) -> float:
        return self._call_node(self._d1fn, "first derivative", x)

    def second_derivative(self, x: float) -> float:
        return self._call_node(self._d2fn, "second derivative", x)


def function_spec(source: str | Node, domain_note: str = "") -> FunctionSpec:
    """Build a :class:`FunctionSpec` with symbolic first and second
    derivatives.  Rejects ``abs`` and non-constant exponents."""
    ast = parse(source) if isinstance(source, str) else source
    ast = simplify(ast)
    d1 = differentiate(ast)
    d2 = differentiate(d1)
    return FunctionSpec(ast=ast, d1=d1, d2=d2, domain_note=domain_note)


def evaluation_spec(source: str | Node, domain_note: str = "") -> FunctionSpec:
    """Build an evaluation-only :class:`FunctionSpec` (no derivatives).
    This is the right constructor for weights, which may contain
    ``abs``."""
    ast = parse(source) if isinstance(source, str) else source
    return FunctionSpec(ast=simplify(ast), d1=None, d2=None, domain_note=domain_note)


# --------------------------------------------------------------------------
# Curvature range
# --------------------------------------------------------------------------

_WIDEN = 1e-9


def _is_affine(node: Node) -> bool:
    if isinstance(node, (Const, Var)):
        return True
    if isinstance(node, Unary) and node.op == "neg":
        return _is_affine(node.arg)
    if isinstance(node, Binary):
        if node.op in ("add", "sub"):
            return _is_affine(node.left) and _is_affine(node.right)
        if node.op == "mul":
            return (isinstance(node.left, Const) and _is_affine(node.right)) or (
                isinstance(node.right, Const) and _is_affine(node.left)
            )
        if node.op == "div":
            return isinstance(node.right, Const) and _is_affine(node.left)
    return False


def _sign_definite(node: Node, interval: Interval) -> bool:
    """For an affine expression: does it keep one strict sign on I?"""
    try:
        va, vb = evaluate(node, interval.a), evaluate(node, interval.b)
    except DomainError:
        return False
    return va * vb > 0.0


def _endpoint_monotone(node: Node, interval: Interval) -> bool:
    """True when the node is structurally a monotone function on I.

    Recognised shapes: constants, affine maps, ``c * core``,
    ``core / c``, ``c / core`` and ``const + core`` wrappers around
    ``exp(affine)`` or ``(affine)^const`` with a sign-definite base.
    This covers the second derivatives of quadratics, exponentials,
    ``+-log`` and power functions.
    """
    if isinstance(node, Const):
        return True
    if _is_affine(node):
        return True
    if isinstance(node, Unary):
        if node.op == "neg":
            return _endpoint_monotone(node.arg, interval)
        if node.op == "exp":
            return _is_affine(node.arg)
        return False
    if isinstance(node, Binary):
        if node.op in ("add", "sub"):
            if isinstance(node.left, Const):
                return _endpoint_monotone(node.right, interval)
            if isinstance(node.right, Const):
                return _endpoint_monotone(node.left, interval)
            return False
        if node.op == "mul":
            if isinstance(node.left, Const):
                return _endpoint_monotone(node.right, interval)
            if isinstance(node.right, Const):
                return _endpoint_monotone(node.left, interval)
            return False
        if node.op == "div":
            if isinstance(node.right, Const):
                return _endpoint_monotone(node.left, interval)
            if isinstance(node.left, Const):
                # c / core is monotone when core is monotone and keeps
                # one sign; restrict to the shapes we can certify.
                inner = node.right
                if _is_affine(inner):
                    return _sign_definite(inner, interval)
                if isinstance(inner, Binary) and inner.op == "pow" and isinstance(inner.right, Const):
                    return _is_affine(inner.left) and _sign_definite(inner.left, interval)
                if isinstance(inner, Unary) and inner.op == "exp":
                    return _is_affine(inner.arg)
            return False
        if node.op == "pow" and isinstance(node.right, Const):
            return _is_affine(node.left) and _sign_definite(node.left, interval)
    return False


def _chebyshev_grid(interval: Interval, samples: int) -> list[float]:
    a, b = interval.a, interval.b
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    nodes = [mid + half * math.cos((2 * k + 1) * math.pi / (2 * samples)) for k in range(samples)]
    return [a, *nodes, b]


def curvature_range(f: FunctionSpec, interval: Interval, samples: int = 33) -> CurvatureBounds:
    """Estimate a band m <= f'' <= M on the interval.

    When f'' has a recognised endpoint-monotone shape the band is the
    pair of endpoint values and is tagged ``EXACT``.  Otherwise the
    band is the min/max of f'' over a Chebyshev grid (plus endpoints),
    widened by ``1e-9 * (1 + |value|)`` on each side, and tagged
    ``SAMPLED_HEURISTIC`` — a usable default, not a certificate.
    """
    if f.d2 is None:
        raise NonSmoothExpression(f"curvature_range needs a second derivative for {f.text!r}")
    if samples < 2:
        raise ParameterOutOfRange(f"samples must be >= 2, got {samples}")
    values = [f.second_derivative(x) for x in _chebyshev_grid(interval, samples)]
    lo, hi = min(values), max(values)
    if _endpoint_monotone(f.d2, interval):
        ea, eb = f.second_derivative(interval.a), f.second_derivative(interval.b)
        m, M = min(ea, eb), max(ea, eb)
        # defensive: a grid value outside the endpoint band means the
        # shape analysis was wrong — fall back to the heuristic path
        if m <= lo and hi <= M:
            return CurvatureBounds(m, M, Provenance.EXACT)
    return CurvatureBounds(
        lo - _WIDEN * (1.0 + abs(lo)),
        hi + _WIDEN * (1.0 + abs(hi)),
        Provenance.SAMPLED_HEURISTIC,
    )
