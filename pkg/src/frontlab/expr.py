"""Coordinate-expression parsing and exact jet evaluation.

Grammar::

    expr   := vector | sum
    vector := "(" sum ("," sum)+ ")"
    sum    := prod (("+"|"-") prod)*
    prod   := unary (("*"|"/") unary)*
    unary  := ["-"] power
    power  := atom ["^" atom]
    atom   := number | ident | ident "(" sum ")" | "(" sum ")"

Identifiers are the variables u, v, w, declared parameter names, and the
unary functions sin cos tan sinh cosh tanh sech exp log sqrt atan abs.
Vectors (arity 2 to 4) appear only at the root.  Exponents must be
constant: number literals, parameters, or arithmetic on those.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from . import taylor
from .errors import ExprDomainError, FrontlabError

VARIABLES = ("u", "v", "w")

_EPS_CBRT = float(np.finfo(float).eps) ** (1.0 / 3.0)


class ParseError(FrontlabError):
    """Syntax or identifier error, with 0-based source offset."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        text = f"{message} at offset {position}"
        if self.expected:
            text += " (expected " + " or ".join(self.expected) + ")"
        super().__init__(text)


# --- tokens -------------------------------------------------------------

NUMBER = "number"
IDENT = "ident"
OP = "op"
END = "end"

_NUMBER_RE = re.compile(r"(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def _tokenize(source):
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            tokens.append(Token(NUMBER, m.group(), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(source, i)
        if m:
            tokens.append(Token(IDENT, m.group(), i))
            i = m.end()
            continue
        if ch in "+-*/^(),":
            tokens.append(Token(OP, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token(END, "", n))
    return tokens


# --- syntax tree --------------------------------------------------------


class Node:
    __slots__ = ("pos",)

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(other) is type(self) and other._key() == self._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"{type(self).__name__}{self._key()!r}"


class Num(Node):
    __slots__ = ("value",)

    def __init__(self, value, pos):
        self.value = float(value)
        self.pos = pos

    def _key(self):
        return (self.value,)


class Param(Node):
    __slots__ = ("name",)

    def __init__(self, name, pos):
        self.name = name
        self.pos = pos

    def _key(self):
        return (self.name,)


class Var(Node):
    __slots__ = ("name", "index")

    def __init__(self, name, pos):
        self.name = name
        self.index = VARIABLES.index(name)
        self.pos = pos

    def _key(self):
        return (self.name,)


class Call(Node):
    __slots__ = ("fn", "arg")

    def __init__(self, fn, arg, pos):
        self.fn = fn
        self.arg = arg
        self.pos = pos

    def _key(self):
        return (self.fn, self.arg)


class Neg(Node):
    __slots__ = ("arg",)

    def __init__(self, arg, pos):
        self.arg = arg
        self.pos = pos

    def _key(self):
        return (self.arg,)


class BinOp(Node):
    __slots__ = ("op", "lhs", "rhs")

    def __init__(self, op, lhs, rhs, pos):
        self.op = op
        self.lhs = lhs
        self.rhs = rhs
        self.pos = pos

    def _key(self):
        return (self.op, self.lhs, self.rhs)


class PowOp(Node):
    """base ^ constant; the exponent is folded to a float at parse time."""

    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent, pos):
        self.base = base
        self.exponent = float(exponent)
        self.pos = pos

    def _key(self):
        return (self.base, self.exponent)


class Vector(Node):
    __slots__ = ("components",)

    def __init__(self, components, pos):
        self.components = tuple(components)
        self.pos = pos

    def _key(self):
        return (self.components,)


@dataclass(frozen=True)
class Expr:
    """Parsed expression plus its bound parameter values."""

    root: Node
    params: tuple  # sorted (name, value) pairs
    source: str

    @property
    def ncomponents(self):
        return len(self.root.components) if isinstance(self.root, Vector) else 0

    def param_dict(self):
        return dict(self.params)

    def __eq__(self, other):
        if not isinstance(other, Expr):
            return NotImplemented
        return self.root == other.root and self.params == other.params


# --- parser -------------------------------------------------------------


class _Parser:
    def __init__(self, tokens, params):
        self.tokens = tokens
        self.i = 0
        self.params = params

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def match_op(self, *ops):
        tok = self.peek()
        if tok.kind == OP and tok.text in ops:
            self.i += 1
            return tok
        return None

    def expect_op(self, op):
        tok = self.match_op(op)
        if tok is None:
            bad = self.peek()
            raise ParseError(
                f"unexpected {bad.text!r}" if bad.kind != END else "unexpected end of input",
                bad.pos,
                expected=(f"'{op}'",),
            )
        return tok

    def parse_root(self):
        first = self.peek()
        if first.kind == OP and first.text == "(":
            mark = self.i
            self.advance()
            head = self.parse_sum()
            if self.peek().kind == OP and self.peek().text == ",":
                comps = [head]
                while self.match_op(","):
                    comps.append(self.parse_sum())
                self.expect_op(")")
                self._expect_end()
                if len(comps) > 4:
                    raise ParseError(
                        f"vector arity {len(comps)} not supported (2 to 4)", first.pos
                    )
                return Vector(comps, first.pos)
            self.i = mark  # plain parenthesized sum: reparse as scalar
        node = self.parse_sum()
        self._expect_end()
        return node

    def _expect_end(self):
        tok = self.peek()
        if tok.kind != END:
            raise ParseError(f"unexpected trailing {tok.text!r}", tok.pos)

    def parse_sum(self):
        node = self.parse_prod()
        while True:
            tok = self.match_op("+", "-")
            if tok is None:
                return node
            node = BinOp(tok.text, node, self.parse_prod(), tok.pos)

    def parse_prod(self):
        node = self.parse_unary()
        while True:
            tok = self.match_op("*", "/")
            if tok is None:
                return node
            node = BinOp(tok.text, node, self.parse_unary(), tok.pos)

    def parse_unary(self):
        tok = self.match_op("-")
        if tok is not None:
            return Neg(self.parse_unary(), tok.pos)
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        tok = self.match_op("^")
        if tok is None:
            return base
        exponent = self.parse_atom()
        return PowOp(base, self._const_value(exponent, tok.pos), tok.pos)

    def parse_atom(self):
        tok = self.peek()
        if tok.kind == NUMBER:
            self.advance()
            return Num(tok.text, tok.pos)
        if tok.kind == IDENT:
            self.advance()
            name = tok.text
            if name in taylor.FUNCTION_NAMES:
                self.expect_op("(")
                arg = self.parse_sum()
                self.expect_op(")")
                return Call(name, arg, tok.pos)
            if self.peek().kind == OP and self.peek().text == "(":
                raise ParseError(f"'{name}' is not a function", tok.pos)
            if name in VARIABLES:
                return Var(name, tok.pos)
            if name in self.params:
                return Param(name, tok.pos)
            raise ParseError(f"unknown identifier '{name}'", tok.pos)
        if tok.kind == OP and tok.text == "(":
            self.advance()
            inner = self.parse_sum()
            self.expect_op(")")
            return inner
        raise ParseError(
            "expected a value" if tok.kind != END else "unexpected end of input",
            tok.pos,
            expected=("number", "identifier", "'('"),
        )

    def _const_value(self, node, caret):
        try:
            return self._fold(node)
        except _NotConstant as err:
            raise ParseError(
                f"exponent must be constant; '{err.args[0]}' is a variable", caret
            ) from None

    def _fold(self, node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Param):
            return float(self.params[node.name])
        if isinstance(node, Var):
            raise _NotConstant(node.name)
        if isinstance(node, Neg):
            return -self._fold(node.arg)
        if isinstance(node, BinOp):
            a, b = self._fold(node.lhs), self._fold(node.rhs)
            return {"+": a + b, "-": a - b, "*": a * b, "/": a / b if b else math.nan}[node.op]
        if isinstance(node, PowOp):
            return self._fold(node.base) ** node.exponent
        if isinstance(node, Call):
            return float(getattr(math, "fabs" if node.fn == "abs" else node.fn)(self._fold(node.arg)))
        raise _NotConstant("vector")


class _NotConstant(Exception):
    pass


def parse(source, params=None):
    """Parse `source` into an Expr; `params` maps parameter names to reals."""
    if not source or not source.strip():
        raise ParseError("empty expression", 0)
    params = dict(params or {})
    for name in params:
        if name in VARIABLES or name in taylor.FUNCTION_NAMES:
            raise ValueError(f"parameter name {name!r} collides with a builtin")
    tree = _Parser(_tokenize(source), params).parse_root()
    return Expr(tree, tuple(sorted((k, float(v)) for k, v in params.items())), source)


# --- printing -----------------------------------------------------------

_PREC_SUM, _PREC_PROD, _PREC_UNARY, _PREC_POWER, _PREC_ATOM = 1, 2, 3, 4, 5


def _fmt_num(x):
    return repr(float(x))


def _fmt(node, prec):
    if isinstance(node, Num):
        return _fmt_num(node.value)
    if isinstance(node, (Param, Var)):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({_fmt(node.arg, _PREC_SUM)})"
    if isinstance(node, PowOp):
        e = node.exponent
        etext = _fmt_num(e) if e >= 0 else f"(0-{_fmt_num(-e)})"
        return f"{_fmt(node.base, _PREC_ATOM)}^{etext}"
    if isinstance(node, Neg):
        text = "-" + _fmt(node.arg, _PREC_POWER)
        return f"({text})" if prec > _PREC_UNARY else text
    if isinstance(node, BinOp):
        if node.op in "+-":
            own, rhs_prec = _PREC_SUM, _PREC_PROD
        else:
            own, rhs_prec = _PREC_PROD, _PREC_UNARY
        text = f"{_fmt(node.lhs, own)}{node.op}{_fmt(node.rhs, rhs_prec)}"
        return f"({text})" if prec > own else text
    if isinstance(node, Vector):
        return "(" + ", ".join(_fmt(c, _PREC_SUM) for c in node.components) + ")"
    raise TypeError(f"cannot print {node!r}")


def to_source(expr):
    """Render an Expr (or bare node) back to parseable text."""
    node = expr.root if isinstance(expr, Expr) else expr
    return _fmt(node, _PREC_SUM)


# --- jets ---------------------------------------------------------------

_BLOCK_ALPHAS = {
    (nv, deg): tuple(taylor._compositions(nv, deg)) for nv in (1, 2, 3) for deg in (1, 2, 3)
}


@dataclass(frozen=True)
class Jet2:
    """Value and partial derivatives of a vector map at one point (or grid).

    Arrays have shape broadcast(u, v[, w]) + (ncomponents,).  `d1` holds
    first partials in variable order; `d2` and `d3` hold the graded-lex
    blocks (for two variables: uu, uv, vv and uuu, uuv, uvv, vvv).
    """

    value: np.ndarray
    d1: tuple
    d2: tuple
    d3: tuple
    order: int
    nvars: int
    abs_at_zero: bool = False

    def _block(self, deg):
        block = (self.d1, self.d2, self.d3)[deg - 1]
        if block is None:
            raise ValueError(f"jet order {deg} was not evaluated (order={self.order})")
        return block

    def partial(self, alpha):
        alpha = tuple(alpha)
        deg = sum(alpha)
        if deg == 0:
            return self.value
        return self._block(deg)[_BLOCK_ALPHAS[self.nvars, deg].index(alpha)]

    # named accessors for the two-variable case
    @property
    def f_u(self):
        return self._block(1)[0]

    @property
    def f_v(self):
        return self._block(1)[1]

    @property
    def f_w(self):
        return self._block(1)[2]

    @property
    def f_uu(self):
        return self._block(2)[0]

    @property
    def f_uv(self):
        return self._block(2)[1]

    @property
    def f_vv(self):
        return self._block(2)[2 if self.nvars == 2 else 3]

    @property
    def f_uuu(self):
        return self._block(3)[0]

    @property
    def f_uuv(self):
        return self._block(3)[1]

    @property
    def f_uvv(self):
        return self._block(3)[2]

    @property
    def f_vvv(self):
        return self._block(3)[3]


def _stack(values, shape):
    if shape == ():
        return np.array([float(x) for x in values])
    cols = [np.broadcast_to(np.asarray(x, dtype=float), shape) for x in values]
    return np.stack(cols, axis=-1)


def _pack_jet(components, space, shape, abs_flag):
    value = _stack([s.value for s in components], shape)
    blocks = [None, None, None]
    for deg in range(1, space.order + 1):
        alphas = _BLOCK_ALPHAS[space.nvars, deg]
        blocks[deg - 1] = tuple(
            _stack([s.partial(a) for s in components], shape) for a in alphas
        )
    return Jet2(
        value=value,
        d1=blocks[0],
        d2=blocks[1],
        d3=blocks[2],
        order=space.order,
        nvars=space.nvars,
        abs_at_zero=abs_flag,
    )


def _eval_node(node, space, vars_, params, flags):
    if isinstance(node, Num):
        return space.const(node.value)
    if isinstance(node, Param):
        return space.const(params[node.name])
    if isinstance(node, Var):
        if node.index >= len(vars_):
            raise ValueError(f"expression uses '{node.name}' but no value was supplied")
        return vars_[node.index]
    if isinstance(node, Neg):
        return -_eval_node(node.arg, space, vars_, params, flags)
    if isinstance(node, BinOp):
        a = _eval_node(node.lhs, space, vars_, params, flags)
        b = _eval_node(node.rhs, space, vars_, params, flags)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        try:
            return a / b
        except ExprDomainError as err:
            raise ExprDomainError(err.args[0], source=to_source(node)) from None
    if isinstance(node, PowOp):
        base = _eval_node(node.base, space, vars_, params, flags)
        e = node.exponent
        try:
            if float(e).is_integer():
                return base.powi(int(e))
            return base.powr(e)
        except ExprDomainError as err:
            raise ExprDomainError(err.args[0], source=to_source(node)) from None
    if isinstance(node, Call):
        arg = _eval_node(node.arg, space, vars_, params, flags)
        try:
            if node.fn == "abs":
                out, hit = taylor.apply_abs(arg)
                if hit:
                    flags["abs_at_zero"] = True
                return out
            return taylor.apply_function(node.fn, arg)
        except ExprDomainError as err:
            raise ExprDomainError(err.args[0], source=to_source(node)) from None
    raise TypeError(f"cannot evaluate {node!r}")


def eval_jet(e, u, v, order, w=None):
    """Evaluate `e` and its exact partials up to `order` at (u, v[, w]).

    u, v (and w) may be floats or broadcastable numpy arrays; with arrays,
    domain violations surface as NaN entries rather than exceptions.
    """
    if order not in (0, 1, 2, 3):
        raise ValueError(f"order must be 0..3, got {order!r}")
    root = e.root if isinstance(e, Expr) else e
    if not isinstance(root, Vector):
        raise ValueError("eval_jet needs a vector-valued expression")
    nvars = 2 if w is None else 3
    shapes = [np.shape(u), np.shape(v)] + ([np.shape(w)] if w is not None else [])
    shape = np.broadcast_shapes(*shapes)
    space = taylor.jet_space(nvars, order)
    vars_ = [space.var(0, u), space.var(1, v)]
    if w is not None:
        vars_.append(space.var(2, w))
    params = e.param_dict() if isinstance(e, Expr) else {}
    flags = {"abs_at_zero": False}
    comps = [_eval_node(c, space, vars_, params, flags) for c in root.components]
    return _pack_jet(comps, space, shape, flags["abs_at_zero"])


def finite_difference_jet(callback, u, v, order, h=None):
    """Order-2 central-difference jet of a black-box map at (u, v)."""
    if order not in (0, 1, 2, 3):
        raise ValueError(f"order must be 0..3, got {order!r}")
    if h is None:
        # snap to a power of two so u +/- h stays exactly representable and
        # the second-difference numerators cancel cleanly
        h = 2.0 ** round(math.log2(_EPS_CBRT * max(1.0, abs(u), abs(v))))
    if h <= 0:
        raise ValueError("step h must be positive")

    def F(uu, vv):
        return np.asarray(callback(uu, vv), dtype=float)

    f0 = F(u, v)
    d1 = d2 = d3 = None
    if order >= 1:
        fpu, fmu = F(u + h, v), F(u - h, v)
        fpv, fmv = F(u, v + h), F(u, v - h)
        d1 = ((fpu - fmu) / (2 * h), (fpv - fmv) / (2 * h))
    if order >= 2:
        fpp, fpm = F(u + h, v + h), F(u + h, v - h)
        fmp, fmm = F(u - h, v + h), F(u - h, v - h)
        h2 = h * h
        d2 = (
            (fpu - 2 * f0 + fmu) / h2,
            (fpp - fpm - fmp + fmm) / (4 * h2),
            (fpv - 2 * f0 + fmv) / h2,
        )
    if order >= 3:
        h3 = h * h * h
        d3 = (
            (F(u + 2 * h, v) - 2 * fpu + 2 * fmu - F(u - 2 * h, v)) / (2 * h3),
            (fpp - 2 * fpv + fmp - fpm + 2 * fmv - fmm) / (2 * h3),
            (fpp - 2 * fpu + fpm - fmp + 2 * fmu - fmm) / (2 * h3),
            (F(u, v + 2 * h) - 2 * fpv + 2 * fmv - F(u, v - 2 * h)) / (2 * h3),
        )
    return Jet2(value=f0, d1=d1, d2=d2, d3=d3, order=order, nvars=2, abs_at_zero=False)
