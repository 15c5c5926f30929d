"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .coeffs import ONE, QQ, ZERO
from .orders import Monomial, MonomialOrder, grevlex


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x >= y else y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero exact rationals.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None, nvars: int = 0):
        clean: Dict[Monomial, object] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has arity {len(m)}, expected {nvars}")
                c = QQ(c)
                if c:
                    clean[tuple(int(e) for e in m)] = c
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, object], nvars: int) -> "Polynomial":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        c = QQ(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        m = [0] * nvars
        m[i] = 1
        return cls._raw({tuple(m): ONE}, nvars)

    @classmethod
    def monomial(cls, m: Sequence[int], c=1) -> "Polynomial":
        return cls({tuple(m): c}, len(m))

    # basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def variables(self) -> Tuple[int, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(sorted(used))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, object]]:
        return iter(self.terms.items())

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = QQ(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({m: v * c for m, v in self.terms.items()}, self.nvars)

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        c = QQ(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({_mono_mul(m, mono): v * c for m, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = self, other
        else:
            a, b = other, self
        out: Dict[Monomial, object] = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                m = _mono_mul(ma, mb)
                v = out.get(m, ZERO) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # order-dependent views
    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder) -> List[Tuple[Monomial, object]]:
        """Terms in decreasing order."""
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    # calculus and evaluation
    def diff(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Polynomial._raw(out, self.nvars)

    def evaluate(self, point: Sequence):
        """Evaluate at a point; exact for rational input, numeric otherwise."""
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        exact = all(isinstance(v, int) or hasattr(v, "denominator") for v in point)
        if exact:
            pt = [QQ(v) for v in point]
            total = ZERO
            for m, c in self.terms.items():
                t = c
                for v, e in zip(pt, m):
                    if e:
                        t = t * v ** e
                total += t
            return total
        total = 0
        for m, c in self.terms.items():
            t = float(c)
            for v, e in zip(point, m):
                if e:
                    t = t * v ** e
            total = total + t
        return total

    def substitute(self, values: Mapping[int, object]) -> "Polynomial":
        """Substitute exact constants for some variables (arity unchanged)."""
        out: Dict[Monomial, object] = {}
        vals = {i: QQ(v) for i, v in values.items()}
        for m, c in self.terms.items():
            mm = list(m)
            for i, v in vals.items():
                if mm[i]:
                    c = c * v ** mm[i]
                    mm[i] = 0
            key = tuple(mm)
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Polynomial._raw(out, self.nvars)

    def embed(self, nvars: int, mapping: Sequence[int]) -> "Polynomial":
        """Move variable j to position mapping[j] in a ring with ``nvars`` variables."""
        out = {}
        for m, c in self.terms.items():
            mm = [0] * nvars
            for j, e in enumerate(m):
                if e:
                    mm[mapping[j]] += e
            out[tuple(mm)] = c
        return Polynomial._raw(out, nvars)

    def restrict(self, keep: Sequence[int]) -> "Polynomial":
        """Drop to the ring on variables ``keep``; requires other variables unused."""
        keep = list(keep)
        out = {}
        for m, c in self.terms.items():
            if any(e for i, e in enumerate(m) if i not in keep):
                raise ValueError("polynomial involves a dropped variable")
            out[tuple(m[i] for i in keep)] = c
        return Polynomial._raw(out, len(keep))

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self.terms:
            return (0,) * self.nvars
        ms = list(self.terms)
        return tuple(min(m[i] for m in ms) for i in range(self.nvars))

    def divide_monomial(self, mono: Monomial) -> "Polynomial":
        return Polynomial._raw({_mono_div(m, mono): c for m, c in self.terms.items()}, self.nvars)

    def coefficient_signs(self) -> set:
        return {1 if c > 0 else -1 for c in self.terms.values()}

    def exact_quotient(self, g: "Polynomial") -> "Polynomial":
        """Return self / g, raising ArithmeticError if g does not divide self."""
        q, r = divmod_poly(self, g)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def divides_exactly(self, g: "Polynomial") -> Optional["Polynomial"]:
        """Quotient self / g when exact, else None."""
        q, r = divmod_poly(self, g)
        return q if r.is_zero() else None

    # text
    def to_str(self, names: Optional[Sequence[str]] = None, order: Optional[MonomialOrder] = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if order is None:
            order = grevlex(self.nvars)
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms(order)):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{_fmt_q(a)}*{mono}"
            else:
                body = _fmt_q(a)
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, nvars={self.nvars})"


def _fmt_q(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def divmod_poly(f: Polynomial, g: Polynomial, order: Optional[MonomialOrder] = None):
    """Division of f by a single g: returns (q, r) with f = q*g + r."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    order = order or grevlex(f.nvars)
    key = order.key
    lm_g = g.leading_monomial(order)
    lc_g = g.terms[lm_g]
    p = dict(f.terms)
    q: Dict[Monomial, object] = {}
    r: Dict[Monomial, object] = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        if _mono_divides(lm_g, m):
            t = _mono_div(m, lm_g)
            coef = c / lc_g
            q[t] = q.get(t, ZERO) + coef
            for mg, cg in g.terms.items():
                mm = _mono_mul(mg, t)
                v = p.get(mm, ZERO) - coef * cg
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
        else:
            r[m] = c
            del p[m]
    q = {m: c for m, c in q.items() if c}
    return Polynomial._raw(q, f.nvars), Polynomial._raw(r, f.nvars)


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse an expression such as "x_A^2*x_C - 3*x_A*x_C + 2*x_C".

    Variable names must come from ``names``. "**" is accepted for powers.
    """
    from fractions import Fraction

    idx = {n: i for i, n in enumerate(names)}
    n = len(names)
    toks: List[Tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"unexpected character at column {pos + 1} in {text!r}")
        num, name, op = mt.groups()
        if num is not None:
            toks.append(("num", num))
        elif name is not None:
            toks.append(("name", name))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = mt.end()
    toks.append(("end", ""))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero constants")
                val = val.scale(1 / rhs.constant_term())
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or not val.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Polynomial.constant(QQ(Fraction(val)), n)
        if kind == "name":
            if val not in idx:
                raise ValueError(f"unknown variable {val!r}")
            return Polynomial.variable(idx[val], n)
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ValueError("missing closing parenthesis")
            return e
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input near token {peek()[1]!r}")
    return result


def poly_from_terms(items: Iterable[Tuple[Sequence[int], object]], nvars: int) -> Polynomial:
    out: Dict[Monomial, object] = {}
    for m, c in items:
        m = tuple(m)
        out[m] = out.get(m, ZERO) + QQ(c)
    return Polynomial(out, nvars)
