"""Azumaya witnesses for the restricted operator algebra.

The restricted algebra acts on F_p[x], which is free of rank p over
F_p[t] on 1, x, ..., x^(p-1); the induced map to p x p matrices over
F_p[t] is an algebra isomorphism, and every fiber t = a is a matrix
algebra over F_p.
"""

from __future__ import annotations

import random
import time

from .homology import VerificationReport
from .modp import validate_prime
from .poly import Polynomial, frobenius_decompose
from .smith import PolyMatrix, smith_decompose
from .weyl import (
    RESTRICTED,
    WeylElement,
    basis_restricted,
    center,
    fp_matrix_rank,
    weyl_act,
    weyl_mul,
)


class EndIso:
    """The action of the restricted algebra on O_X as a free F_p[t]-module."""

    def __init__(self, p: int):
        validate_prime(p)
        self.p = p

    def matrix_of(self, u: WeylElement) -> PolyMatrix:
        if u.flavor != RESTRICTED:
            raise ValueError("end_iso is defined on the restricted algebra")
        p = self.p
        cols = []
        for j in range(p):
            image = weyl_act(u, Polynomial.monomial(p, j))
            cols.append(frobenius_decompose(image, p))
        return PolyMatrix(p, p, p, [[cols[j][i] for j in range(p)] for i in range(p)], "t")

    def structure_matrix(self) -> PolyMatrix:
        """p^2 x p^2 matrix over F_p[t] of the map on k[t]-bases.

        Columns run over the basis x^a d^b; rows flatten the p x p
        target matrices.  Degrees come out <= 1 in t, and the map is
        bijective exactly when all invariant factors are units.
        """
        p = self.p
        columns = []
        for (a, b) in basis_restricted(p):
            m = self.matrix_of(WeylElement.monomial(p, a, b))
            columns.append([m.entries[i][j] for i in range(p) for j in range(p)])
        return PolyMatrix(
            p, p * p, p * p,
            [[columns[c][r] for c in range(p * p)] for r in range(p * p)],
            "t",
        )

    def is_bijective(self) -> bool:
        dec = smith_decompose(self.structure_matrix(), want_u=False)
        if dec.rank != self.p * self.p:
            return False
        return all(f.is_unit() for f in dec.invariant_factors())

    def is_algebra_map(self, samples: int = 40, seed: int = 42) -> bool:
        rng = random.Random(seed)
        p = self.p
        for _ in range(samples):
            u = random_restricted(p, rng)
            v = random_restricted(p, rng)
            lhs = self.matrix_of(weyl_mul(u, v))
            rhs = self.matrix_of(u) @ self.matrix_of(v)
            if lhs != rhs:
                return False
        return True


def end_iso(p: int) -> EndIso:
    return EndIso(p)


def random_restricted(p: int, rng: random.Random, nterms: int = 3) -> WeylElement:
    terms = {}
    for _ in range(nterms):
        terms[(rng.randrange(p), rng.randrange(p))] = rng.randrange(p)
    return WeylElement(p, RESTRICTED, terms)


def fiber_at(a: int, p: int):
    """Specialize t -> a and re-check the matrix-algebra verdict fiberwise.

    Returns (basis_images, verdict): the p^2 images of the monomial
    basis as integer matrices acting on F_p[x]/((x - a)^p), and whether
    they span the full p x p matrix algebra.
    """
    validate_prime(p)
    a %= p
    iso = EndIso(p)
    images = []
    flat_rows = []
    for (xa, xb) in basis_restricted(p):
        m = iso.matrix_of(WeylElement.monomial(p, xa, xb))
        fiber = [[m.entries[i][j](a) for j in range(p)] for i in range(p)]
        images.append(fiber)
        flat_rows.append([fiber[i][j] for i in range(p) for j in range(p)])
    verdict = fp_matrix_rank(flat_rows, p) == p * p
    return images, verdict


def _center_matches_box(p: int, bounds: tuple) -> bool:
    got = center(RESTRICTED, p, bounds)
    expected = {(e, 0) for e in range(0, bounds[0] + 1, p)}
    found = set()
    for elt in got:
        keys = set(elt.terms)
        if len(keys) != 1:
            return False
        found |= keys
    return found == expected


def azumaya_suite(p: int, points=None, seed: int = 42) -> VerificationReport:
    """Center, endomorphism isomorphism, and fiber checks in one report."""
    start = time.perf_counter()
    report = VerificationReport(suite="azumaya", p=p, params={"points": points})
    report.add_check("center_is_k_t_in_box", _center_matches_box(p, (3 * p, p - 1)))
    iso = EndIso(p)
    report.add_check("end_iso_algebra_map", iso.is_algebra_map(seed=seed))
    report.add_check("end_iso_bijective_rank_p2", iso.is_bijective())
    pts = list(points) if points is not None else list(range(p))
    for a in pts:
        _, verdict = fiber_at(a, p)
        report.add_check(f"fiber_matrix_algebra_at_{a % p}", verdict)
    report.wall_time = time.perf_counter() - start
    return report
