"""Exact rational functions over Q or GF(2), and derivations acting on them.

Polynomials are held as FLINT sparse multivariate polynomials in graded-lex
order (t1 > t2 > ... > tm).  A :class:`RatFunc` is always stored in canonical
form: numerator and denominator coprime, denominator with leading coefficient
1, zero stored as 0/1.  Equal values therefore have identical representations
and compare/hash structurally.
"""

from __future__ import annotations

import ast
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import flint

from .errors import ArityMismatch, DivisionByZero, ParseError

QQ = "QQ"
GF2 = "GF2"


@dataclass(frozen=True)
class Field:
    """Descriptor of K = Frac(F[t1..tm]) with F = Q or GF(2)."""

    nvars: int
    coeffs: str = QQ

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        if self.coeffs not in (QQ, GF2):
            raise ValueError(f"unknown coefficient field {self.coeffs!r}")
        if self.coeffs == GF2 and self.nvars != 1:
            raise ValueError("GF(2) is only supported in one variable")

    @classmethod
    def rational(cls, nvars: int = 2) -> "Field":
        return cls(nvars, QQ)

    @classmethod
    def gf2(cls) -> "Field":
        return cls(1, GF2)

    @property
    def characteristic(self) -> int:
        return 2 if self.coeffs == GF2 else 0

    @cached_property
    def names(self) -> tuple[str, ...]:
        if self.coeffs == GF2:
            return ("t",)
        return tuple(f"t{i + 1}" for i in range(self.nvars))

    @cached_property
    def ctx(self):
        if self.coeffs == GF2:
            return flint.nmod_mpoly_ctx.get(self.names, modulus=2, ordering="deglex")
        return flint.fmpq_mpoly_ctx.get(self.names, "deglex")

    def poly(self, c) -> object:
        """Constant polynomial."""
        if self.coeffs == GF2:
            return self.ctx.from_dict({(0,) * self.nvars: int(c) % 2})
        if isinstance(c, Fraction):
            c = flint.fmpq(c.numerator, c.denominator)
        return self.ctx.from_dict({(0,) * self.nvars: c})

    @cached_property
    def zero(self) -> "RatFunc":
        return RatFunc._raw(self, self.poly(0), self.poly(1))

    @cached_property
    def one(self) -> "RatFunc":
        return RatFunc._raw(self, self.poly(1), self.poly(1))

    def __call__(self, value) -> "RatFunc":
        """Coerce an int, Fraction, RatFunc or string into this field."""
        if isinstance(value, RatFunc):
            if value.field != self:
                raise ArityMismatch(f"{value.field} is not {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return RatFunc(self, self.poly(value.numerator), self.poly(value.denominator))
        if isinstance(value, int):
            return RatFunc._raw(self, self.poly(value), self.poly(1))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def var(self, i: int) -> "RatFunc":
        """The i-th variable, 1-based (t1 is var(1))."""
        if not 1 <= i <= self.nvars:
            raise IndexError(i)
        return RatFunc._raw(self, self.ctx.gens()[i - 1], self.poly(1))

    def gens(self) -> tuple["RatFunc", ...]:
        return tuple(self.var(i + 1) for i in range(self.nvars))

    def parse(self, text: str) -> "RatFunc":
        return parse_ratfunc(self, text)

    def __str__(self):
        base = "GF2" if self.coeffs == GF2 else "QQ"
        return f"{base}({', '.join(self.names)})"


def _check_same(a: "RatFunc", b: "RatFunc"):
    if a.field != b.field:
        raise ArityMismatch(f"{a.field} vs {b.field}")


class RatFunc:
    """Element of K in canonical form. Immutable."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: Field, num, den=None):
        if den is None:
            den = field.poly(1)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            num, den = field.poly(0), field.poly(1)
        else:
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                inv = 1 / lc
                num = num * inv
                den = den * inv
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, field, num, den):
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj.field, obj.num, obj.den, obj._hash = field, num, den, None
        return obj

    @classmethod
    def _coprime(cls, field, num, den):
        # num, den already coprime; only the leading coefficient is fixed up
        lc = den.leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            num, den = num * inv, den * inv
        return cls._raw(field, num, den)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            _check_same(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, str(self.num), str(self.den)))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc._raw(self.field, self.num + other.num, d1)
        # Henrici: with g = gcd(d1, d2) only gcd(num, g) can remain
        g = d1.gcd(d2)
        if g.is_one():
            num = self.num * d2 + other.num * d1
            if num.is_zero():
                return self.field.zero
            return RatFunc._coprime(self.field, num, d1 * d2)
        c1, c2 = d1 / g, d2 / g
        num = self.num * c2 + other.num * c1
        if num.is_zero():
            return self.field.zero
        h = num.gcd(g)
        if not h.is_one():
            num = num / h
            g = g / h
        return RatFunc._coprime(self.field, num, c1 * c2 * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.field, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.field.zero
        if other.is_one():
            return self
        if self.is_one():
            return other
        # cross-cancel so the products stay small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        return RatFunc._coprime(
            self.field,
            (self.num / g1) * (other.num / g2),
            (self.den / g2) * (other.den / g1),
        )

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.field, self.num**k, self.den**k)

    def partial(self, i: int) -> "RatFunc":
        """Formal partial derivative with respect to the i-th variable (0-based)."""
        n, d = self.num, self.den
        dn = n.derivative(i)
        if d.is_one():
            return RatFunc(self.field, dn)
        dd = d.derivative(i)
        return RatFunc(self.field, dn * d - n * dd, d * d)

    def terms(self) -> tuple[dict, dict]:
        """Numerator and denominator as {exponent tuple: coefficient} maps."""
        return _terms(self.field, self.num), _terms(self.field, self.den)

    def total_degree(self) -> int:
        return max(self.num.total_degree(), self.den.total_degree())

    def __str__(self):
        return f"({format_poly(self.field, self.num)})/({format_poly(self.field, self.den)})"

    def __repr__(self):
        return f"RatFunc<{self}>"


def _coeff(field: Field, c):
    if field.coeffs == GF2:
        return int(c) % 2
    return Fraction(int(c.p), int(c.q))


def _terms(field, poly) -> dict:
    return {tuple(m): _coeff(field, c) for m, c in zip(poly.monoms(), poly.coeffs())}


def format_poly(field: Field, poly) -> str:
    """Render a polynomial with terms in graded-lex order, e.g. ``2*t1*t2 - t2^3``."""
    if poly.is_zero():
        return "0"
    out = []
    for mono, c in zip(poly.monoms(), poly.coeffs()):
        c = _coeff(field, c)
        neg = c < 0
        c = abs(c)
        factors = []
        for name, e in zip(field.names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = str(c)
        elif c == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(c)] + factors)
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def parse_ratfunc(field: Field, text: str) -> RatFunc:
    """Parse arithmetic over the field's variable names.

    Accepts integers, variable names, ``+ - * /`` and ``^`` or ``**`` with
    integer exponents, e.g. ``"(t1^2 - t2)/(3*t1)"``.
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc
    names = dict(zip(field.names, field.gens()))

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return field(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ParseError(f"unknown variable {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ParseError(f"non-integer exponent in {text!r}")
                return ev(node.left) ** (sign * exp.value)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


@dataclass(frozen=True)
class Derivation:
    """f -> sum_i a_i * df/dt_i with coefficients a_i in K."""

    field: Field
    coeffs: tuple[RatFunc, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.nvars:
            raise ArityMismatch(
                f"derivation has {len(self.coeffs)} coefficients, field has {self.field.nvars} variables"
            )
        for a in self.coeffs:
            if a.field != self.field:
                raise ArityMismatch(f"coefficient over {a.field}, derivation over {self.field}")

    @classmethod
    def partial(cls, field: Field, i: int) -> "Derivation":
        """The formal partial d/dt_i, 1-based."""
        if not 1 <= i <= field.nvars:
            raise IndexError(i)
        return cls(field, tuple(field.one if j == i - 1 else field.zero for j in range(field.nvars)))

    @classmethod
    def of(cls, field: Field, coeffs: Iterable) -> "Derivation":
        return cls(field, tuple(field(c) for c in coeffs))

    def __call__(self, f: RatFunc) -> RatFunc:
        return derive(self, f)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, f) -> "Derivation":
        """The K-multiple f * self."""
        f = self.field(f)
        return Derivation(self.field, tuple(f * a for a in self.coeffs))

    def __str__(self):
        parts = [f"{a}*d/d{n}" for a, n in zip(self.coeffs, self.field.names) if not a.is_zero()]
        return " + ".join(parts) if parts else "0"


def derive(d: Derivation, f: RatFunc) -> RatFunc:
    if f.field != d.field:
        raise ArityMismatch(f"derivation over {d.field} applied to element of {f.field}")
    out = f.field.zero
    for i, a in enumerate(d.coeffs):
        if not a.is_zero():
            out = out + a * f.partial(i)
    return out


def derivations_independent(d1: Derivation, d2: Derivation) -> bool:
    """True iff d1, d2 are linearly independent over K (some 2x2 minor is nonzero)."""
    if d1.field != d2.field:
        raise ArityMismatch(f"{d1.field} vs {d2.field}")
    a, b = d1.coeffs, d2.coeffs
    for i, j in itertools.combinations(range(len(a)), 2):
        if not (a[i] * b[j] - a[j] * b[i]).is_zero():
            return True
    return False


def _monomials(nvars: int, degree_cap: int) -> list[tuple[int, ...]]:
    return [
        e
        for e in itertools.product(range(degree_cap + 1), repeat=nvars)
        if sum(e) <= degree_cap
    ]


def random_poly(field: Field, rng: random.Random, degree_cap: int = 4,
                max_terms: int = 6, coeff_bound: int = 5):
    """Nonzero polynomial with at most ``max_terms`` terms of total degree <= degree_cap."""
    monos = _monomials(field.nvars, degree_cap)
    k = rng.randint(1, min(max_terms, len(monos)))
    chosen = rng.sample(monos, k)
    if field.coeffs == GF2:
        return field.ctx.from_dict({m: 1 for m in chosen})
    coeffs = {}
    for m in chosen:
        c = 0
        while c == 0:
            c = rng.randint(-coeff_bound, coeff_bound)
        coeffs[m] = c
    return field.ctx.from_dict(coeffs)


def random_ratfunc(field: Field, rng: random.Random, degree_cap: int = 4,
                   max_terms: int = 6, coeff_bound: int = 5,
                   polynomial: bool = False) -> RatFunc:
    """Seeded random nonzero element of K.

    About a third of the draws are polynomials so that the samples are not
    all dominated by large denominators.
    """
    num = random_poly(field, rng, degree_cap, max_terms, coeff_bound)
    if polynomial or rng.random() < 1 / 3:
        return RatFunc(field, num)
    den = random_poly(field, rng, degree_cap, max_terms, coeff_bound)
    return RatFunc(field, num, den)


def ratfunc_arith(f: RatFunc, g: RatFunc, op: str) -> RatFunc:
    """Dispatch form of the four field operations."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown op {op!r}")
