"""Weyl-type operator algebras on the affine line in characteristic p.

Three flavors share one normal form (coefficients on the left of the
derivation powers):

* crystalline: generated by x and d with d x - x d = 1, d^b unbounded;
* restricted: the quotient with d^b = 0 for b >= p, free of rank p^2
  over F_p[t] with basis x^a d^b (a, b < p);
* divided: divided-power operators d^[b] with
  d^[i] d^[j] = C(i+j, i) d^[i+j], acting by Hasse derivatives.
"""

from __future__ import annotations

from .errors import BoundsTooSmall, FlavorMismatch, ModulusMismatch
from .modp import binom, factorial, falling, inv_mod, validate_prime
from .poly import Polynomial

CRYSTALLINE = "crystalline"
RESTRICTED = "restricted"
DIVIDED = "divided"

_FLAVORS = (CRYSTALLINE, RESTRICTED, DIVIDED)


class WeylElement:
    """Normal-form operator sum c_{a,b} x^a d^b (or x^a d^[b])."""

    __slots__ = ("p", "flavor", "terms")

    def __init__(self, p: int, flavor: str, terms=None):
        validate_prime(p)
        if flavor not in _FLAVORS:
            raise FlavorMismatch(f"unknown flavor {flavor!r}")
        cleaned = {}
        if terms:
            for (a, b), c in terms.items() if isinstance(terms, dict) else terms:
                c %= p
                if c == 0:
                    continue
                if flavor == RESTRICTED and b >= p:
                    continue
                key = (a, b)
                prev = cleaned.get(key, 0)
                s = (prev + c) % p
                if s:
                    cleaned[key] = s
                elif key in cleaned:
                    del cleaned[key]
        self.p = p
        self.flavor = flavor
        self.terms = cleaned

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, p: int, flavor: str = RESTRICTED) -> "WeylElement":
        return cls(p, flavor)

    @classmethod
    def one(cls, p: int, flavor: str = RESTRICTED) -> "WeylElement":
        return cls(p, flavor, {(0, 0): 1})

    @classmethod
    def monomial(cls, p: int, a: int, b: int, coeff: int = 1, flavor: str = RESTRICTED) -> "WeylElement":
        return cls(p, flavor, {(a, b): coeff})

    @classmethod
    def from_polynomial(cls, f: Polynomial, flavor: str = RESTRICTED) -> "WeylElement":
        if f.var != "x":
            raise ModulusMismatch("expected a polynomial in x")
        return cls(f.p, flavor, {(a, 0): c for a, c in enumerate(f.coeffs) if c})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.p == other.p
            and self.flavor == other.flavor
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.flavor, frozenset(self.terms.items())))

    def order(self) -> int:
        """Maximal derivation power appearing; -1 for the zero element."""
        return max((b for _, b in self.terms), default=-1)

    def x_degree(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def polynomial_part(self) -> Polynomial:
        coeffs = [0] * (self.x_degree() + 1)
        for (a, b), c in self.terms.items():
            if b == 0:
                coeffs[a] = c
        return Polynomial(self.p, coeffs, "x")

    def is_polynomial(self) -> bool:
        return all(b == 0 for _, b in self.terms)

    def _check(self, other: "WeylElement") -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")
        if self.flavor != other.flavor:
            raise FlavorMismatch(f"mixed flavors {self.flavor!r} and {other.flavor!r}")

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = (terms.get(key, 0) + c) % self.p
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
        return WeylElement(self.p, self.flavor, terms)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.p, self.flavor, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scale(self, c: int) -> "WeylElement":
        return WeylElement(self.p, self.flavor, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    # -- display -------------------------------------------------------------

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        dsym = "d" if self.flavor != DIVIDED else "d[]"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            factors = []
            if c != 1 or (a == 0 and b == 0):
                factors.append(str(c))
            if a:
                factors.append("x" if a == 1 else f"x^{a}")
            if b:
                if self.flavor == DIVIDED:
                    factors.append(f"d[{b}]")
                else:
                    factors.append("d" if b == 1 else f"d^{b}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeylElement({self.flavor}, p={self.p}, {self.pretty()!r})"


def weyl_mul(u: WeylElement, v: WeylElement) -> WeylElement:
    """Normal-form product.

    Crystalline and restricted flavors rewrite with
    d^b f = sum_k C(b,k) f^(k) d^(b-k); divided power uses Hasse
    derivatives and d^[i] d^[j] = C(i+j, i) d^[i+j].
    """
    u._check(v)
    p, flavor = u.p, u.flavor
    out: dict = {}
    divided = flavor == DIVIDED
    restricted = flavor == RESTRICTED
    for (a1, b1), c1 in u.terms.items():
        for (a2, b2), c2 in v.terms.items():
            c = (c1 * c2) % p
            # move d^b1 across x^a2, then merge derivation powers
            for k in range(min(b1, a2) + 1):
                if divided:
                    move = binom(a2, k, p)
                    merge = binom(b1 - k + b2, b2, p)
                else:
                    move = (binom(b1, k, p) * falling(a2, k, p)) % p
                    merge = 1
                coeff = (c * move * merge) % p
                if coeff == 0:
                    continue
                b = b1 - k + b2
                if restricted and b >= p:
                    continue
                key = (a1 + a2 - k, b)
                s = (out.get(key, 0) + coeff) % p
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return WeylElement(p, flavor, out)


def weyl_act(u: WeylElement, f: Polynomial) -> Polynomial:
    """Apply the operator to a polynomial in x."""
    if u.p != f.p:
        raise ModulusMismatch(f"operator has p={u.p}, polynomial p={f.p}")
    if f.var != "x":
        raise ModulusMismatch("operators act on polynomials in x")
    p = u.p
    result = Polynomial.zero(p, "x")
    for (a, b), c in u.terms.items():
        g = f.hasse(b) if u.flavor == DIVIDED else f.derivative(b)
        if g.is_zero():
            continue
        result = result + g.shift(a).scale(c)
    return result


def commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return weyl_mul(u, v) - weyl_mul(v, u)


def restrict(u: WeylElement) -> WeylElement:
    """Quotient map from the crystalline algebra, killing d^b for b >= p."""
    if u.flavor != CRYSTALLINE:
        raise FlavorMismatch(f"restrict expects a crystalline element, got {u.flavor!r}")
    return WeylElement(u.p, RESTRICTED, {k: c for k, c in u.terms.items() if k[1] < u.p})


def crystalline_to_divided(u: WeylElement) -> WeylElement:
    """d^b -> b! d^[b]; intertwines the actions on polynomials."""
    if u.flavor != RESTRICTED:
        raise FlavorMismatch(f"expected a restricted element, got {u.flavor!r}")
    return WeylElement(
        u.p, DIVIDED, {(a, b): c * factorial(b, u.p) for (a, b), c in u.terms.items()}
    )


def opposite(u: WeylElement) -> WeylElement:
    """Principal anti-involution x -> x, d -> -d, re-expressed in normal form.

    Anti-multiplicative (op(uv) = op(v) op(u)) and an involution.
    """
    p = u.p
    out = WeylElement.zero(p, u.flavor)
    for (a, b), c in u.terms.items():
        # (-1)^b d^b x^a, rewritten with coefficients on the left
        sign = -1 if b % 2 else 1
        db = WeylElement(p, u.flavor, {(0, b): sign * c})
        xa = WeylElement(p, u.flavor, {(a, 0): 1})
        out = out + weyl_mul(db, xa)
    return out


def basis_restricted(p: int) -> list:
    """k[t]-basis x^a d^b, ordered with b fastest."""
    return [(a, b) for a in range(p) for b in range(p)]


def center(flavor: str, p: int, degree_bounds: tuple) -> list:
    """Basis of central elements inside the monomial box.

    degree_bounds = (max x-degree, max d-degree); solves [u, x] = 0 and
    [u, d] = 0 as an F_p-linear system over the box span.
    """
    validate_prime(p)
    x_max, d_max = degree_bounds
    if x_max < p or (flavor != RESTRICTED and d_max < p):
        raise BoundsTooSmall(f"bounds {degree_bounds} too small for p={p}")
    if flavor == RESTRICTED:
        d_max = min(d_max, p - 1)
    gens = [
        WeylElement.monomial(p, 1, 0, flavor=flavor),
        WeylElement.monomial(p, 0, 1, flavor=flavor),
    ]
    return commutant(gens, p, flavor, (x_max, d_max))


def commutant(gens: list, p: int, flavor: str, degree_bounds: tuple) -> list:
    """Basis of box elements commuting with every generator."""
    x_max, d_max = degree_bounds
    box = [(a, b) for a in range(x_max + 1) for b in range(d_max + 1)]
    index = {m: i for i, m in enumerate(box)}
    rows = []
    for g in gens:
        images = {}
        for m in box:
            u = WeylElement(p, flavor, {m: 1})
            images[m] = commutator(u, g)
        keys = sorted({k for img in images.values() for k in img.terms})
        for k in keys:
            rows.append([images[m].terms.get(k, 0) % p for m in box])
    basis_vectors = _fp_nullspace(rows, len(box), p)
    out = []
    for vec in basis_vectors:
        terms = {box[i]: c for i, c in enumerate(vec) if c}
        out.append(WeylElement(p, flavor, terms))
    return out


def _fp_nullspace(rows: list, ncols: int, p: int) -> list:
    """Row-reduce over F_p and read off a deterministic nullspace basis."""
    m = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = inv_mod(m[r][c], p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for row_i, pc in enumerate(pivots):
            vec[pc] = (-m[row_i][fc]) % p
        basis.append(vec)
    return basis


def fp_matrix_rank(rows: list, p: int) -> int:
    """Rank of an integer matrix mod p."""
    if not rows:
        return 0
    m = [[v % p for v in row] for row in rows]
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        pivot = None
        for i in range(rank, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = inv_mod(m[rank][c], p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
