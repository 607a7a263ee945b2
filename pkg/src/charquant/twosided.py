"""The two-sided complex of the restricted algebra and the chi comparison map.

Degree n is spanned over F_p[t] by
    x^alpha d^e (x) d^(s_1) (x) ... (x) d^(s_n) (x) d^c
(all exponents < p): an enveloping-module cochain with n shared slots
between the left (opposite-structure) leg d^e and the right leg d^c.
The cofaces split the left leg with alternating signs (the opposite
involution negates the derivation), comultiply interior slots, and
split the right leg plainly.  With this convention the differential
squares to zero and the kernel in degree 0 is exactly the image of the
algebra map

    chi(u) = delta(u) + 1 (x) u,

whose closed form on monomials is
    chi(x^a d^m) = sum_j (-1)^j C(m, j) x^a d^(m-j) (x) d^j.
"""

from __future__ import annotations

import random
import time
from itertools import product as iter_product

from .errors import TruncationTooSmall
from .homology import VerificationReport, complex_cohomology
from .modp import binom, validate_prime
from .poly import Polynomial, frobenius_decompose
from .smith import PolyMatrix, kernel_basis, smith_decompose, solve_linear
from .weyl import RESTRICTED, WeylElement, weyl_mul


class EnvelopingElement:
    """Element of the enveloping module: finite map (e, c) -> poly in x.

    Carries the product (u (x) v)(u' (x) v') = u u' (x) v' v, i.e. the
    second leg multiplies through the opposite algebra.
    """

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms=None):
        validate_prime(p)
        cleaned = {}
        if terms:
            for (e, c), f in (terms.items() if isinstance(terms, dict) else terms):
                if e >= p or c >= p or f.is_zero():
                    continue
                key = (e, c)
                acc = cleaned.get(key)
                g = f if acc is None else acc + f
                if g.is_zero():
                    cleaned.pop(key, None)
                else:
                    cleaned[key] = g
        self.p = p
        self.terms = cleaned

    def __eq__(self, other):
        return (
            isinstance(other, EnvelopingElement)
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __add__(self, other):
        terms = dict(self.terms)
        for key, f in other.terms.items():
            acc = terms.get(key)
            g = f if acc is None else acc + f
            if g.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = g
        return EnvelopingElement(self.p, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int):
        return EnvelopingElement(self.p, {k: f.scale(c) for k, f in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __mul__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        p = self.p
        out: dict = {}
        for (e1, c1), f1 in self.terms.items():
            for (e2, c2), f2 in other.terms.items():
                c = c1 + c2
                if c >= p:
                    continue
                for k in range(min(e1, f2.degree() if f2.coeffs else 0) + 1):
                    w = binom(e1, k, p)
                    if w == 0:
                        continue
                    g = f2.derivative(k).scale(w)
                    if g.is_zero():
                        continue
                    e = e1 + e2 - k
                    if e >= p:
                        continue
                    key = (e, c)
                    h = f1 * g
                    acc = out.get(key)
                    tot = h if acc is None else acc + h
                    if tot.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = tot
        return EnvelopingElement(p, out)

    def pretty(self):
        if not self.terms:
            return "0"
        parts = []
        for (e, c), f in sorted(self.terms.items()):
            fp = f.pretty()
            lead = "" if fp == "1" else (f"({fp})*" if "+" in fp else f"{fp}*")
            parts.append(f"{lead}d^{e}(x)d^{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"EnvelopingElement(p={self.p}, {self.pretty()!r})"


def chi(u: WeylElement) -> EnvelopingElement:
    """chi(u) = delta(u) + 1 (x) u: the Hochschild coboundary of the
    0-cochain u plus the unit-slot inclusion, in enveloping normal form.

    On monomials this is sum_j (-1)^j C(m, j) x^a d^(m-j) (x) d^j,
    and the map is an algebra homomorphism.
    """
    if u.flavor != RESTRICTED:
        raise ValueError("chi is defined on the restricted algebra")
    p = u.p
    out: dict = {}
    for (a, m), coeff in u.terms.items():
        xa = Polynomial.monomial(p, a, coeff)
        for j in range(m + 1):
            w = binom(m, j, p)
            if w == 0:
                continue
            sign = -1 if j % 2 else 1
            key = (m - j, j)
            f = xa.scale(sign * w)
            acc = out.get(key)
            tot = f if acc is None else acc + f
            if tot.is_zero():
                out.pop(key, None)
            else:
                out[key] = tot
    return EnvelopingElement(p, out)


def chi_is_multiplicative(p: int, pairs: int = 50, seed: int = 42) -> bool:
    rng = random.Random(seed)
    for _ in range(pairs):
        u = _random_restricted(p, rng)
        v = _random_restricted(p, rng)
        if chi(weyl_mul(u, v)) != chi(u) * chi(v):
            return False
    return True


def _random_restricted(p: int, rng: random.Random) -> WeylElement:
    terms = {}
    for _ in range(3):
        terms[(rng.randrange(p), rng.randrange(p))] = rng.randrange(p)
    return WeylElement(p, RESTRICTED, terms)


class TwoSidedComplex:
    """Matrix assembly of the two-sided cochain complex."""

    def __init__(self, p: int):
        validate_prime(p)
        self.p = p

    def basis(self, degree: int) -> list:
        p = self.p
        return [
            (a, e, slots, c)
            for a in range(p)
            for e in range(p)
            for slots in iter_product(range(p), repeat=degree)
            for c in range(p)
        ]

    def basis_index(self, degree: int) -> dict:
        return {key: n for n, key in enumerate(self.basis(degree))}

    def _coface_terms(self, key, k: int, degree: int):
        a, e, slots, c = key
        p = self.p
        if k == 0:
            for j in range(e + 1):
                w = binom(e, j, p)
                if w:
                    sign = -1 if j % 2 else 1
                    yield (a, e - j, (j,) + slots, c), sign * w
        elif k <= degree:
            s = slots[k - 1]
            for i in range(s + 1):
                w = binom(s, i, p)
                if w:
                    yield (a, e, slots[: k - 1] + (i, s - i) + slots[k:], c), w
        else:
            for i in range(c + 1):
                w = binom(c, i, p)
                if w:
                    yield (a, e, slots + (i,), c - i), w

    def matrix(self, degree: int) -> PolyMatrix:
        p = self.p
        source = self.basis(degree)
        index = self.basis_index(degree + 1)
        mat = PolyMatrix.zero(p, len(index), len(source))
        for col, key in enumerate(source):
            for k in range(degree + 2):
                outer = -1 if k % 2 else 1
                for tgt, w in self._coface_terms(key, k, degree):
                    row = index[tgt]
                    cur = mat.entries[row][col]
                    mat.entries[row][col] = cur + Polynomial.constant(p, outer * w, "t")
        return mat

    def chi_column(self, element: EnvelopingElement) -> list:
        index = self.basis_index(0)
        coords = [Polynomial.zero(self.p, "t") for _ in range(len(index))]
        for (e, c), f in element.terms.items():
            for a, g in enumerate(frobenius_decompose(f, self.p)):
                if not g.is_zero():
                    pos = index[(a, e, (), c)]
                    coords[pos] = coords[pos] + g
        return coords

    def chi_matrix(self) -> PolyMatrix:
        """Columns chi(x^a d^m) over the monomial basis of the restricted algebra."""
        p = self.p
        cols = []
        for a in range(p):
            for m in range(p):
                cols.append(self.chi_column(chi(WeylElement.monomial(p, a, m))))
        rows = len(self.basis(0))
        return PolyMatrix(
            p, rows, p * p,
            [[cols[c][r] for c in range(p * p)] for r in range(rows)],
            "t",
        )


def two_sided_check(p: int, n_degrees: int, seed: int = 42) -> VerificationReport:
    """Verify the two-sided complex collapses onto the restricted algebra.

    Checks, within truncation: the differential squares to zero, the
    chi-image is exactly the kernel in degree 0 (a split inclusion of
    rank p^2), cohomology vanishes in degree 1, and chi is an algebra
    map on random pairs.
    """
    if n_degrees < 2:
        raise TruncationTooSmall("two-sided check needs N >= 2")
    start = time.perf_counter()
    cx = TwoSidedComplex(p)
    diffs = [cx.matrix(i) for i in range(n_degrees)]
    report = VerificationReport(
        suite="two_sided",
        p=p,
        params={"N": n_degrees, "degree0_rank": diffs[0].cols},
    )
    square_ok = all(
        (diffs[i + 1] @ diffs[i]).is_zero() for i in range(n_degrees - 1)
    )
    report.add_check("differential_squares_to_zero", square_ok)
    summaries = complex_cohomology(diffs)
    report.summaries = summaries
    report.add_check(
        "H0_free_rank_p2",
        summaries[0].free_rank == p * p and not summaries[0].torsion,
    )
    chi_mat = cx.chi_matrix()
    image_in_kernel = all(e.is_zero() for row in (diffs[0] @ chi_mat).entries for e in row)
    report.add_check("chi_image_killed_by_differential", image_in_kernel)
    dec = smith_decompose(chi_mat, want_u=False)
    split_injection = dec.rank == p * p and all(f.is_unit() for f in dec.invariant_factors())
    report.add_check("chi_split_injective", split_injection)
    kern = kernel_basis(diffs[0])
    onto_kernel = len(kern) == p * p and all(
        solve_linear(chi_mat, vec) is not None for vec in kern
    )
    report.add_check("chi_image_is_whole_kernel", onto_kernel)
    for degree in range(1, n_degrees):
        report.add_check(f"vanishes_in_degree_{degree}", summaries[degree].is_zero())
    report.add_check("chi_multiplicative_on_random_pairs", chi_is_multiplicative(p, 50, seed))
    report.wall_time = time.perf_counter() - start
    return report
