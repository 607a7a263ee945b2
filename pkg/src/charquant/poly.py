"""Dense univariate polynomials over F_p.

A polynomial carries its modulus p and a variable tag ('x' for the
affine coordinate, 't' for its p-th power).  Coefficient sequences are
stored trimmed, so equality is plain coefficientwise comparison.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ModulusMismatch, VariableMismatch
from .modp import binom, falling, inv_mod, validate_prime


class Polynomial:
    """Element of F_p[x] or F_p[t], dense by exponent."""

    __slots__ = ("p", "var", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = (), var: str = "x"):
        validate_prime(p)
        if var not in ("x", "t"):
            raise VariableMismatch(f"unknown variable tag {var!r}")
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.var = var
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int, var: str = "x") -> "Polynomial":
        return cls(p, (), var)

    @classmethod
    def one(cls, p: int, var: str = "x") -> "Polynomial":
        return cls(p, (1,), var)

    @classmethod
    def constant(cls, p: int, c: int, var: str = "x") -> "Polynomial":
        return cls(p, (c,), var)

    @classmethod
    def monomial(cls, p: int, exponent: int, coeff: int = 1, var: str = "x") -> "Polynomial":
        return cls(p, [0] * exponent + [coeff], var)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.p == other.p
            and self.var == other.var
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.var, self.coeffs))

    def _check(self, other: "Polynomial") -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")
        if self.var != other.var:
            raise VariableMismatch(f"mixed variables {self.var!r} and {other.var!r}")

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return Polynomial(self.p, out, self.var)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.p, [-c for c in self.coeffs], self.var)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.p, self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = (out[i + j] + a * b) % self.p
        return Polynomial(self.p, out, self.var)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.p, self.var)
        if c == 1:
            return self
        return Polynomial(self.p, [a * c for a in self.coeffs], self.var)

    def shift(self, k: int) -> "Polynomial":
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return Polynomial(self.p, (0,) * k + self.coeffs, self.var)

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree()
        lead_inv = inv_mod(other.leading(), p)
        quot = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c:
                q = (c * lead_inv) % p
                quot[i - db] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - db + j] = (rem[i - db + j] - q * b) % p
        return (
            Polynomial(p, quot, self.var),
            Polynomial(p, rem[:db] if db > 0 else [], self.var),
        )

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(inv_mod(self.leading(), self.p))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def divides(self, other: "Polynomial") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- evaluation and calculus ----------------------------------------

    def __call__(self, a: int) -> int:
        result = 0
        for c in reversed(self.coeffs):
            result = (result * a + c) % self.p
        return result

    def derivative(self, k: int = 1) -> "Polynomial":
        """Plain k-th derivative (d/dvar)^k."""
        p = self.p
        out = [0] * max(len(self.coeffs) - k, 0)
        for n in range(k, len(self.coeffs)):
            c = (self.coeffs[n] * falling(n, k, p)) % p
            out[n - k] = c
        return Polynomial(p, out, self.var)

    def hasse(self, k: int) -> "Polynomial":
        """k-th Hasse (divided-power) derivative: x^n -> C(n,k) x^(n-k)."""
        p = self.p
        out = [0] * max(len(self.coeffs) - k, 0)
        for n in range(k, len(self.coeffs)):
            out[n - k] = (self.coeffs[n] * binom(n, k, p)) % p
        return Polynomial(p, out, self.var)

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"Polynomial(p={self.p}, {self.pretty()!r})"

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if n == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                tail = self.var if n == 1 else f"{self.var}^{n}"
                parts.append(head + tail)
        return " + ".join(parts)

    def coeff_string(self) -> str:
        """Positional 'c0+c1*t+...' form used in JSON reports."""
        if not self.coeffs:
            return "0"
        parts = [str(self.coeffs[0])]
        for n, c in enumerate(self.coeffs[1:], start=1):
            parts.append(f"{c}*{self.var}" if n == 1 else f"{c}*{self.var}^{n}")
        return "+".join(parts)


def hasse_derivative(f: Polynomial, k: int) -> Polynomial:
    """k-th Hasse derivative of f; composition obeys H_i H_j = C(i+j,i) H_{i+j}."""
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    return f.hasse(k)


def frobenius_decompose(f: Polynomial, p: int | None = None) -> tuple:
    """Split f in F_p[x] over the basis 1, x, ..., x^(p-1) with F_p[t] parts.

    Returns (g_0, ..., g_{p-1}) with f = sum g_a(x^p) x^a.
    """
    p = f.p if p is None else p
    if p != f.p:
        raise ModulusMismatch(f"polynomial has p={f.p}, requested {p}")
    buckets: list[list[int]] = [[] for _ in range(p)]
    for n, c in enumerate(f.coeffs):
        a, e = n % p, n // p
        bucket = buckets[a]
        while len(bucket) <= e:
            bucket.append(0)
        bucket[e] = c
    return tuple(Polynomial(p, b, "t") for b in buckets)


def frobenius_reassemble(parts: Sequence[Polynomial]) -> Polynomial:
    """Inverse of frobenius_decompose."""
    p = parts[0].p
    out: list[int] = []
    for a, g in enumerate(parts):
        for e, c in enumerate(g.coeffs):
            n = e * p + a
            while len(out) <= n:
                out.append(0)
            out[n] = (out[n] + c) % p
    return Polynomial(p, out, "x")


def poly_t(p: int, coeffs: Iterable[int]) -> Polynomial:
    return Polynomial(p, coeffs, "t")


def poly_x(p: int, coeffs: Iterable[int]) -> Polynomial:
    return Polynomial(p, coeffs, "x")
