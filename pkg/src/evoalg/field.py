"""Scalar backends.

Scalars are plain Python numbers: ``complex`` for the floating backend and
``fractions.Fraction`` for the exact one.  A :class:`Field` object carries the
operations that depend on the backend (equality, n-th roots, ordering,
parsing), so the linear algebra code can stay generic.
"""

from __future__ import annotations

import ast
import cmath
import math
import re
from functools import lru_cache
from fractions import Fraction
from numbers import Number


class RootUnavailable(ArithmeticError):
    """The requested root does not exist in the backend."""


class BackendMismatch(TypeError):
    """Scalars from different backends were mixed."""


class ParseError(ValueError):
    pass


def _int_root(n: int, k: int):
    """Exact k-th root of a non-negative integer, or None."""
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k))) if n < 2**1000 else _newton_root(n, k)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    r = _newton_root(n, k)
    return r if r**k == n else None


def _newton_root(n, k):
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _factor_root_degree(n: int):
    """Split n into a list of small prime degrees, largest first."""
    out = []
    for p in (7, 5, 3, 2):
        while n % p == 0:
            out.append(p)
            n //= p
    if n != 1:
        out.append(n)
    return out


class Field:
    name = "abstract"

    zero: Number
    one: Number

    def coerce(self, x):
        raise NotImplementedError

    def eq(self, x, y, scale=1.0) -> bool:
        raise NotImplementedError

    def is_zero(self, x, scale=1.0) -> bool:
        return self.eq(x, self.zero, scale)

    def nth_root(self, x, n: int):
        raise NotImplementedError

    def sqrt(self, x):
        return self.nth_root(x, 2)

    def key(self, x):
        raise NotImplementedError

    def fmt(self, x) -> str:
        raise NotImplementedError

    def absval(self, x) -> float:
        return abs(complex(x))

    # constants
    @property
    def i(self):
        return self.nth_root(self.coerce(-1), 2)

    def root_of_unity(self, n: int, k: int = 1):
        raise NotImplementedError

    @property
    def zeta3(self):
        return self.root_of_unity(3)

    @property
    def phi7(self):
        return self.root_of_unity(7)

    def parse(self, text, env=None):
        return evaluate(text, self, env)

    def __repr__(self):
        return f"<{type(self).__name__}>"


class ComplexField(Field):
    """Floating complex numbers with a relative tolerance."""

    name = "complex"
    zero = 0j
    one = 1 + 0j

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    def coerce(self, x):
        if isinstance(x, complex):
            return x
        if isinstance(x, (int, float, Fraction)):
            return complex(x)
        if isinstance(x, Number):
            return complex(x)
        raise BackendMismatch(f"cannot use {type(x).__name__} as a complex scalar")

    def eq(self, x, y, scale=1.0):
        x, y = complex(x), complex(y)
        return abs(x - y) <= self.tol * max(1.0, abs(x), abs(y), scale)

    def clean(self, x):
        """Drop a real or imaginary part that is pure rounding noise."""
        x = complex(x)
        m = abs(x)
        re_, im_ = x.real, x.imag
        if abs(im_) <= 1e-14 * m:
            im_ = 0.0
        if abs(re_) <= 1e-14 * m:
            re_ = 0.0
        return complex(re_ + 0.0, im_ + 0.0)

    def nth_root(self, x, n: int):
        if n < 1:
            raise ValueError("root degree must be positive")
        x = self.clean(self.coerce(x))
        if x == 0:
            return 0j
        # principal root: argument of x taken in [0, 2pi)
        arg = cmath.phase(x)
        if arg < 0:
            arg += 2 * math.pi
        r = abs(x) ** (1.0 / n)
        return self.clean(cmath.rect(r, arg / n))

    def root_of_unity(self, n: int, k: int = 1):
        return self.clean(cmath.exp(2j * math.pi * k / n))

    def key(self, x):
        x = complex(x)
        # rounding keeps the order stable under floating noise
        return (round(x.real, 7) + 0.0, round(x.imag, 7) + 0.0)

    def fmt(self, x) -> str:
        x = self.clean(complex(x))
        re_, im_ = x.real, x.imag
        if im_ == 0:
            return repr(re_)
        if re_ == 0:
            return f"{im_!r}i"
        sign = "+" if im_ >= 0 else "-"
        return f"{re_!r}{sign}{abs(im_)!r}i"

    def random(self, rng, lo=0.5, hi=2.0):
        """Random nonzero scalar with modulus in [lo, hi]."""
        r = rng.uniform(lo, hi)
        t = rng.uniform(0, 2 * math.pi)
        return cmath.rect(r, t)


class RationalField(Field):
    """Exact rationals.  Roots exist only when they are rational."""

    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)
    tol = 0.0

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            return Fraction(int(x))
        if isinstance(x, int):
            return Fraction(x)
        raise BackendMismatch(f"cannot use {type(x).__name__} as an exact rational")

    def eq(self, x, y, scale=1.0):
        return self.coerce(x) == self.coerce(y)

    def nth_root(self, x, n: int):
        x = self.coerce(x)
        if x == 0:
            return x
        if x < 0 and n % 2 == 0:
            raise RootUnavailable(f"no rational root of degree {n} of {x}")
        sign = -1 if x < 0 else 1
        num = _int_root(abs(x.numerator), n)
        den = _int_root(x.denominator, n)
        if num is None or den is None:
            raise RootUnavailable(f"{x} is not a rational {n}-th power")
        return Fraction(sign * num, den)

    def root_of_unity(self, n: int, k: int = 1):
        k %= n
        if k == 0:
            return self.one
        if 2 * k == n:
            return -self.one
        raise RootUnavailable(f"primitive root of unity of order {n // math.gcd(n, k)} is not rational")

    def key(self, x):
        return (self.coerce(x), 0)

    def fmt(self, x) -> str:
        x = self.coerce(x)
        return str(x)

    def random(self, rng, lo=1, hi=9):
        num = rng.randint(lo, hi) * rng.choice((-1, 1))
        return Fraction(num, rng.randint(1, 5))


COMPLEX = ComplexField()
RATIONAL = RationalField()


def get_field(name: str, tol: float | None = None) -> Field:
    if name == "complex":
        return COMPLEX if tol is None else ComplexField(tol)
    if name == "rational":
        return RATIONAL
    raise ValueError(f"unknown field {name!r}")


def backend_of(x) -> str:
    if isinstance(x, Fraction):
        return "rational"
    if isinstance(x, int):
        return "any"
    if isinstance(x, (float, complex)):
        return "complex"
    raise BackendMismatch(f"not a scalar: {x!r}")


def approx_eq(x, y, tol: float | None = None) -> bool:
    """Backend-aware equality.  Exact for rationals, relative tolerance for complex."""
    bx, by = backend_of(x), backend_of(y)
    if {bx, by} == {"rational", "complex"}:
        raise BackendMismatch("cannot compare a rational with a complex scalar")
    if "complex" in (bx, by):
        return ComplexField(COMPLEX.tol if tol is None else tol).eq(x, y)
    return Fraction(x) == Fraction(y)


def nth_root(x, n: int, field: Field | None = None):
    if field is None:
        field = RATIONAL if isinstance(x, Fraction) else COMPLEX
    return field.nth_root(x, n)


# -- scalar expression grammar ------------------------------------------------

_IMAG_LIT = re.compile(r"(?<![\w.])(\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?i\b")
_FUNCS = {"sqrt": 2, "cbrt": 3, "rt7": 7}
_CONSTS = ("i", "zeta3", "phi7")


def _prep(text: str) -> str:
    text = text.strip()
    # "2.5i" -> "2.5*i"
    return _IMAG_LIT.sub(lambda m: m.group(0)[:-1] + "*i", text)


@lru_cache(maxsize=8192)
def compile_expr(text: str):
    try:
        return ast.parse(_prep(text), mode="eval")
    except SyntaxError as e:
        raise ParseError(f"cannot parse scalar {text!r}") from e


def evaluate(text, field: Field, env=None):
    """Evaluate a scalar expression.

    The grammar is ordinary arithmetic (+ - * / and integer powers) over
    decimal literals, ``a+bi`` literals, the constants ``i``, ``zeta3``,
    ``phi7``, the root functions ``sqrt``, ``cbrt``, ``rt7`` and any names
    bound in *env*.
    """
    if not isinstance(text, str):
        return field.coerce(text)
    tree = compile_expr(text)
    return _ev(tree.body, field, env or {})


def _ev(node, F, env):
    if isinstance(node, ast.Constant):
        v = node.value
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"bad literal {v!r}")
        if isinstance(v, float):
            if isinstance(F, RationalField):
                return Fraction(ast.unparse(node)) if hasattr(ast, "unparse") else Fraction(str(v))
            return complex(v)
        return F.coerce(v)
    if isinstance(node, ast.Name):
        if node.id in env:
            return F.coerce(env[node.id])
        if node.id == "i":
            return F.i
        if node.id == "zeta3":
            return F.zeta3
        if node.id == "phi7":
            return F.phi7
        raise ParseError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        v = _ev(node.operand, F, env)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ParseError("bad unary operator")
    if isinstance(node, ast.BinOp):
        a = _ev(node.left, F, env)
        if isinstance(node.op, ast.Pow):
            e = _ev(node.right, F, env)
            k = _as_int(e, F)
            if k < 0:
                if F.is_zero(a):
                    raise ZeroDivisionError("zero to a negative power")
                return (F.one / a) ** (-k)
            return a**k
        b = _ev(node.right, F, env)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b == 0:
                raise ZeroDivisionError("division by zero in expression")
            return a / b
        raise ParseError("bad binary operator")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        n = _FUNCS.get(node.func.id)
        if n is None or len(node.args) != 1 or node.keywords:
            raise ParseError(f"unknown function {node.func.id!r}")
        return F.nth_root(_ev(node.args[0], F, env), n)
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _as_int(e, F):
    if isinstance(e, Fraction):
        if e.denominator != 1:
            raise ParseError("only integer exponents are supported")
        return int(e)
    e = complex(e)
    k = round(e.real)
    if abs(e - k) > 1e-12:
        raise ParseError("only integer exponents are supported")
    return int(k)
