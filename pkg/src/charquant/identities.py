"""Seeded property suites for the cosimplicial, cup, and brace identities.

Every sign-sensitive law is anchored to the evaluation oracle: an
operator equality is accepted exactly when both sides agree on all
monomial argument tuples up to the faithfulness bound.  The global sign
relating the differential to the bracket with the multiplication
cochain is determined once at p = 2 and reused everywhere.
"""

from __future__ import annotations

import random
import time
from itertools import combinations, product as iter_product

from .homology import VerificationReport
from .poly import Polynomial, poly_t
from .polydiff import (
    COEFF_DFULL,
    COEFF_DRES,
    COEFF_DRESOP,
    COEFF_O,
    SLOT_CRYSTALLINE,
    SLOT_RESTRICTED,
    PolMonomial,
    TensorOperator,
    brace,
    cochain_differential,
    codegeneracy,
    coface,
    cup,
    evaluate,
    gerstenhaber,
    pol_coface,
    pol_embed,
)
from .weyl import WeylElement, weyl_mul

_GLOBAL_SIGN_CACHE: dict = {}


def random_tensor(p, arity, rng, coeff=COEFF_O, slot_flavor=SLOT_RESTRICTED,
                  nterms=2, max_coeff_deg=2):
    slot_top = p if slot_flavor == SLOT_RESTRICTED else 2 * p
    payload_top = {COEFF_O: 1, COEFF_DRES: p, COEFF_DRESOP: p, COEFF_DFULL: 2 * p}[coeff]
    terms = {}
    for _ in range(nterms):
        bs = tuple(rng.randrange(slot_top) for _ in range(arity))
        c = rng.randrange(payload_top)
        f = Polynomial(p, [rng.randrange(p) for _ in range(max_coeff_deg + 1)])
        key = (bs, c)
        terms[key] = terms.get(key, Polynomial.zero(p)) + f
    return TensorOperator(p, arity, coeff, terms, slot_flavor)


def _oracle_bound(*ops) -> int:
    return max(max(op.max_slot_order() for op in ops), 1) + 2


def operators_equal(a: TensorOperator, b: TensorOperator, bound=None) -> bool:
    """Normal forms are canonical, so equality is structural; the oracle
    cross-checks evaluations when a bound is supplied."""
    if bound is None:
        return a == b
    if a == b:
        return True
    p = a.p
    for es in iter_product(range(bound + 1), repeat=a.arity):
        args = [Polynomial.monomial(p, e) for e in es]
        if evaluate(a, args) != evaluate(b, args):
            return False
    return True


# -- semantic (oracle) recomputations -------------------------------------------


def coface_semantic_ok(op: TensorOperator, k: int, args) -> bool:
    """Check coface(op, k) against the displayed argument formulas."""
    got = evaluate(coface(op, k), args)
    i = op.arity
    p = op.p
    if k == 0:
        inner = evaluate(op, args[1:])
        want = _left_action(op.coeff, args[0], inner, p)
    elif k <= i:
        merged = list(args[: k - 1]) + [args[k - 1] * args[k]] + list(args[k + 1:])
        want = evaluate(op, merged)
    else:
        inner = evaluate(op, args[:-1])
        want = _right_action(op.coeff, inner, args[-1], p)
    return got == want


def _left_action(coeff, g, value, p):
    if coeff == COEFF_O:
        return g * value
    gw = WeylElement.from_polynomial(g, value.flavor)
    if coeff == COEFF_DRESOP:
        return weyl_mul(value, gw)
    return weyl_mul(gw, value)


def _right_action(coeff, value, g, p):
    if coeff == COEFF_O:
        return value * g
    gw = WeylElement.from_polynomial(g, value.flavor)
    if coeff == COEFF_DRESOP:
        return weyl_mul(gw, value)
    return weyl_mul(value, gw)


def brace_semantic_value(a: TensorOperator, inserts, args):
    """Direct insertion sum, using only the evaluation map."""
    m = len(inserts)
    i = a.arity
    js = [b.arity for b in inserts]
    p = a.p
    total = None
    for positions in combinations(range(1, i + 1), m):
        offsets = [(q - 1) - l + sum(js[:l]) for l, q in enumerate(positions)]
        eps = sum(o * (j - 1) for o, j in zip(offsets, js)) % 2
        sign = -1 if eps else 1
        pos_map = {q: l for l, q in enumerate(positions)}
        a_args = []
        idx = 0
        for s in range(1, i + 1):
            if s in pos_map:
                l = pos_map[s]
                a_args.append(evaluate(inserts[l], args[idx: idx + js[l]]))
                idx += js[l]
            else:
                a_args.append(args[idx])
                idx += 1
        piece = evaluate(a, a_args).scale(sign)
        total = piece if total is None else total + piece
    if total is None:
        n = i + sum(js) - m
        zero_op = TensorOperator.zero(p, max(n, 0), a.coeff, a.slot_flavor)
        total = evaluate(zero_op, args)
    return total


def _brace_or_zero(a: TensorOperator, inserts):
    m = len(inserts)
    if m > a.arity:
        n = a.arity + sum(b.arity for b in inserts) - m
        return TensorOperator.zero(a.p, max(n, 0), a.coeff, a.slot_flavor)
    return brace(a, inserts)


def bracket(a: TensorOperator, b: TensorOperator) -> TensorOperator:
    """Gerstenhaber bracket with the empty-sum convention for small arity."""
    first = _brace_or_zero(a, [b])
    second = _brace_or_zero(b, [a])
    sign = -1 if ((a.arity - 1) * (b.arity - 1)) % 2 else 1
    return first - second.scale(sign)


def multiplication_cochain(p: int, slot_flavor=SLOT_RESTRICTED) -> TensorOperator:
    return TensorOperator.from_basis(p, (0, 0), 0, COEFF_O, None, slot_flavor)


def global_bracket_sign() -> int:
    """sigma with delta(A) = sigma [A, mu], pinned at p = 2, seed 42.

    The bracket takes the cochain first and the multiplication second;
    in the [mu, A] order the graded antisymmetry inserts an extra
    (-1)^(arity - 1) and no single global sign exists.
    """
    if "sigma" in _GLOBAL_SIGN_CACHE:
        return _GLOBAL_SIGN_CACHE["sigma"]
    rng = random.Random(42)
    sigma = None
    # at p = 2 both signs agree, so the pin comes from the first sample
    # (at the smallest odd prime) where they are distinguishable; the
    # result is then required to hold at p = 2 as well
    for p in (3, 2):
        mu = multiplication_cochain(p)
        for _ in range(64):
            a = random_tensor(p, rng.randrange(3), rng)
            delta = cochain_differential(a)
            if delta.is_zero():
                continue
            br = bracket(a, mu)
            plus, minus = delta == br, delta == br.scale(-1)
            if not plus and not minus:
                raise AssertionError("differential is not proportional to the bracket with mu")
            if plus != minus and sigma is None:
                sigma = 1 if plus else -1
            if sigma is not None and not (br.scale(sigma) == delta):
                raise AssertionError("bracket sign is not globally consistent")
    _GLOBAL_SIGN_CACHE["sigma"] = sigma if sigma is not None else 1
    return _GLOBAL_SIGN_CACHE["sigma"]


# -- suites ------------------------------------------------------------------------


def _suite_cosimplicial(p, samples, rng):
    failures = 0
    for _ in range(samples):
        arity = rng.randrange(4)
        op = random_tensor(p, arity, rng, coeff=rng.choice([COEFF_O, COEFF_DRES]))
        i_idx = rng.randrange(arity + 2)
        j_idx = rng.randrange(arity + 3)
        # coface-coface: d_j d_i = d_i d_(j-1) for i < j
        if i_idx < j_idx:
            lhs = coface(coface(op, i_idx), j_idx)
            rhs = coface(coface(op, j_idx - 1), i_idx)
            if lhs != rhs:
                failures += 1
        # codegeneracy relations on arities that allow them
        if arity >= 1:
            si = rng.randrange(arity)
            # s_i d_i = id and s_i d_(i+1) = id
            if codegeneracy(coface(op, si), si) != op:
                failures += 1
            if codegeneracy(coface(op, si + 1), si) != op:
                failures += 1
        if arity >= 2:
            i2 = rng.randrange(arity - 1)
            j2 = rng.randrange(i2, arity - 1)
            lhs = codegeneracy(codegeneracy(op, j2 + 1), i2)
            rhs = codegeneracy(codegeneracy(op, i2), j2)
            if lhs != rhs:
                failures += 1
    return failures


def _suite_differential_squares(p, samples, rng):
    failures = 0
    tags = [COEFF_O, COEFF_DRES, COEFF_DRESOP, COEFF_DFULL]
    for n in range(samples):
        coeff = tags[n % len(tags)]
        flavor = SLOT_CRYSTALLINE if coeff == COEFF_DFULL else SLOT_RESTRICTED
        op = random_tensor(p, rng.randrange(3), rng, coeff=coeff, slot_flavor=flavor)
        if not cochain_differential(cochain_differential(op)).is_zero():
            failures += 1
    return failures


def _suite_cup_leibniz(p, samples, rng):
    """delta(a u b) = (-1)^j (delta a u b) + a u delta b.

    The sign sits on the left summand because the cup already carries
    the (-1)^(ij) twist; at p = 2 this agrees with the untwisted form.
    """
    failures = 0
    for _ in range(samples):
        i = rng.randrange(3)
        j = rng.randrange(3)
        a = random_tensor(p, i, rng)
        b = random_tensor(p, j, rng)
        lhs = cochain_differential(cup(a, b))
        first = cup(cochain_differential(a), b)
        rhs = (first if j % 2 == 0 else first.scale(-1)) + cup(a, cochain_differential(b))
        if lhs != rhs:
            failures += 1
    return failures


def _suite_brace_oracle(p, samples, rng):
    """Tensor-level braces against the pure-evaluation insertion sum."""
    failures = 0
    for _ in range(samples):
        i = 1 + rng.randrange(2)
        a = random_tensor(p, i, rng)
        m = 1 + rng.randrange(min(i, 2))
        inserts = [random_tensor(p, rng.randrange(3), rng, nterms=1) for _ in range(m)]
        result = brace(a, inserts)
        bound = 2 * p
        ok = True
        for es in iter_product(range(bound), repeat=result.arity):
            args = [Polynomial.monomial(p, e) for e in es]
            if evaluate(result, args) != brace_semantic_value(a, inserts, args):
                ok = False
                break
        if not ok:
            failures += 1
    return failures


def _suite_pre_lie(p, samples, rng):
    failures = 0
    for _ in range(samples):
        a = random_tensor(p, 1 + rng.randrange(2), rng)
        b = random_tensor(p, rng.randrange(3), rng, nterms=1)
        c = random_tensor(p, rng.randrange(3), rng, nterms=1)
        if b.arity == 0 and c.arity == 0:
            # both associator sides live in degree -1, where everything vanishes
            c = random_tensor(p, 1 + rng.randrange(2), rng, nterms=1)
        lhs = _brace_or_zero(_brace_or_zero(a, [b]), [c]) - _brace_or_zero(a, [_brace_or_zero(b, [c])])
        rhs = _brace_or_zero(_brace_or_zero(a, [c]), [b]) - _brace_or_zero(a, [_brace_or_zero(c, [b])])
        sign = -1 if ((b.arity - 1) * (c.arity - 1)) % 2 else 1
        if lhs != rhs.scale(sign):
            failures += 1
    return failures


def _suite_differential_is_bracket(p, samples, rng):
    sigma = global_bracket_sign()
    mu = multiplication_cochain(p)
    failures = 0
    for _ in range(samples):
        a = random_tensor(p, rng.randrange(3), rng)
        if cochain_differential(a) != bracket(a, mu).scale(sigma):
            failures += 1
    return failures


def _random_pol_monomial(p, rng, arity=None, positive=False):
    if arity is None:
        arity = rng.randrange(3)
    coeff = poly_t(p, [rng.randrange(p) for _ in range(2)])
    if coeff.is_zero():
        coeff = poly_t(p, [1])
    low = 1 if positive else 0
    return PolMonomial(coeff, tuple(low + rng.randrange(3 - low) for _ in range(arity)))


def _suite_pol_gerstenhaber(p, samples, rng):
    """Bracket vanishing on the fiber image, in the range where it holds.

    Fiber coefficients x^(pe) are killed by every p-fold derivative, so
    for monomials of arity <= 1 (the levels carrying the cotangent
    coordinates of a one-variable base) the two circle products agree
    termwise and the bracket vanishes for every p.  In arity >= 2 the
    vanishing is only cohomological; see the reported observation.
    """
    failures = 0
    for _ in range(samples):
        a = pol_embed(_random_pol_monomial(p, rng, arity=rng.randrange(2), positive=True))
        b = pol_embed(_random_pol_monomial(p, rng, arity=rng.randrange(2), positive=True))
        if not bracket(a, b).is_zero():
            failures += 1
    return failures


def _suite_pol_cochain_map(p, samples, rng):
    failures = 0
    for _ in range(samples):
        mono = _random_pol_monomial(p, rng, arity=rng.randrange(3))
        k = rng.randrange(mono.arity + 2)
        upstairs = coface(pol_embed(mono), k)
        downstairs = None
        for piece in pol_coface(mono, k):
            emb = pol_embed(piece)
            downstairs = emb if downstairs is None else downstairs + emb
        if upstairs != downstairs:
            failures += 1
    return failures


def _suite_pol_all_braces(p, samples, rng):
    """The stronger reading: every brace with inserts vanishes on the image.

    Reported alongside the bracket vanishing; not an acceptance gate.
    """
    failures = 0
    for _ in range(samples):
        a = pol_embed(_random_pol_monomial(p, rng, arity=1 + rng.randrange(2)))
        m = 1 + rng.randrange(min(a.arity, 2))
        inserts = [pol_embed(_random_pol_monomial(p, rng)) for _ in range(m)]
        if not _brace_or_zero(a, inserts).is_zero():
            failures += 1
    return failures


SUITES = [
    ("cosimplicial_identities", _suite_cosimplicial, True),
    ("differential_squares_to_zero", _suite_differential_squares, True),
    ("cup_leibniz", _suite_cup_leibniz, True),
    ("brace_matches_evaluation_oracle", _suite_brace_oracle, True),
    ("brace_pre_lie", _suite_pre_lie, True),
    ("differential_is_global_sign_bracket", _suite_differential_is_bracket, True),
    ("gerstenhaber_vanishes_on_fiber_image", _suite_pol_gerstenhaber, True),
    ("fiber_embedding_is_cochain_map", _suite_pol_cochain_map, True),
    ("all_braces_vanish_on_fiber_image", _suite_pol_all_braces, False),
]


def identity_suites(p: int, samples: int = 100, seed: int = 42) -> VerificationReport:
    """Run all identity suites; gated suites must have zero failures."""
    if samples < 1:
        raise ValueError("need a positive sample count")
    start = time.perf_counter()
    report = VerificationReport(
        suite="identities", p=p, params={"samples": samples, "seed": seed}
    )
    report.params["global_sign"] = global_bracket_sign()
    for name, fn, gated in SUITES:
        rng = random.Random((seed, name, p).__repr__())
        failures = fn(p, samples, rng)
        if gated:
            report.add_check(name, failures == 0)
        else:
            report.params[f"observed_{name}"] = failures == 0
    report.wall_time = time.perf_counter() - start
    return report
