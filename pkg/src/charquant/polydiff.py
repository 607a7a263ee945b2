"""Polydifferential tensor operators and their cosimplicial structure.

An arity-i operator is stored as a normal-form element of
D^(tensor i) (x) P: a finite map (slot orders b_1..b_i, payload index)
-> coefficient polynomial in x, with every coefficient pushed to the
far left through the rewrite d^b f = sum_k C(b,k) f^(k) d^(b-k).

Coefficient tags:
  O       structure sheaf (trivial payload),
  Dres    restricted operator algebra, payload basis d^c with c < p,
  DresOp  the same space with the opposite bimodule structure,
  Dfull   crystalline operators, payload unbounded.

Slots are restricted (b < p, with products dying at p) or crystalline
(unbounded), independent of the payload tag.
"""

from __future__ import annotations

from itertools import combinations, product as iter_product

from .errors import (
    ArityMismatch,
    CoefficientMismatch,
    FlavorMismatch,
    IndexOutOfRange,
    ModulusMismatch,
    TooManyInserts,
)
from .modp import binom, multinom, validate_prime
from .poly import Polynomial
from .weyl import CRYSTALLINE, RESTRICTED, WeylElement

COEFF_O = "O"
COEFF_DRES = "Dres"
COEFF_DRESOP = "DresOp"
COEFF_DFULL = "Dfull"

_COEFFS = (COEFF_O, COEFF_DRES, COEFF_DRESOP, COEFF_DFULL)

SLOT_RESTRICTED = "restricted"
SLOT_CRYSTALLINE = "crystalline"


def default_slot_flavor(coeff: str) -> str:
    return SLOT_CRYSTALLINE if coeff == COEFF_DFULL else SLOT_RESTRICTED


class TensorOperator:
    """Normal-form polydifferential operator of fixed arity."""

    __slots__ = ("p", "arity", "coeff", "slot_flavor", "terms")

    def __init__(self, p, arity, coeff, terms=None, slot_flavor=None):
        validate_prime(p)
        if coeff not in _COEFFS:
            raise CoefficientMismatch(f"unknown coefficient tag {coeff!r}")
        if slot_flavor is None:
            slot_flavor = default_slot_flavor(coeff)
        if slot_flavor not in (SLOT_RESTRICTED, SLOT_CRYSTALLINE):
            raise FlavorMismatch(f"unknown slot flavor {slot_flavor!r}")
        cleaned = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (bs, c), f in items:
                bs = tuple(bs)
                if len(bs) != arity:
                    raise ArityMismatch(f"slot tuple {bs} does not match arity {arity}")
                if f.var != "x" or f.p != p:
                    raise ModulusMismatch("coefficients must be polynomials in x over F_p")
                if f.is_zero():
                    continue
                if slot_flavor == SLOT_RESTRICTED and any(b >= p for b in bs):
                    continue
                if coeff in (COEFF_DRES, COEFF_DRESOP) and c >= p:
                    continue
                if coeff == COEFF_O and c != 0:
                    raise CoefficientMismatch("structure-sheaf payload index must be 0")
                key = (bs, c)
                acc = cleaned.get(key)
                g = f if acc is None else acc + f
                if g.is_zero():
                    cleaned.pop(key, None)
                else:
                    cleaned[key] = g
        self.p = p
        self.arity = arity
        self.coeff = coeff
        self.slot_flavor = slot_flavor
        self.terms = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p, arity, coeff=COEFF_O, slot_flavor=None):
        return cls(p, arity, coeff, None, slot_flavor)

    @classmethod
    def from_basis(cls, p, bs, c=0, coeff=COEFF_O, coeff_poly=None, slot_flavor=None):
        f = coeff_poly if coeff_poly is not None else Polynomial.one(p)
        return cls(p, len(bs), coeff, {(tuple(bs), c): f}, slot_flavor)

    @classmethod
    def unit(cls, p, coeff=COEFF_O, slot_flavor=None):
        """Arity-0 unit (the constant function 1, payload index 0)."""
        return cls(p, 0, coeff, {((), 0): Polynomial.one(p)}, slot_flavor)

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TensorOperator)
            and self.p == other.p
            and self.arity == other.arity
            and self.coeff == other.coeff
            and self.slot_flavor == other.slot_flavor
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.arity, self.coeff, self.slot_flavor, frozenset(self.terms.items())))

    def _check(self, other, same_arity=False):
        if self.p != other.p:
            raise ModulusMismatch("mixed moduli")
        if self.coeff != other.coeff:
            raise CoefficientMismatch(f"mixed coefficients {self.coeff} and {other.coeff}")
        if self.slot_flavor != other.slot_flavor:
            raise FlavorMismatch("mixed slot flavors")
        if same_arity and self.arity != other.arity:
            raise ArityMismatch(f"mixed arities {self.arity} and {other.arity}")

    def __add__(self, other):
        self._check(other, same_arity=True)
        terms = dict(self.terms)
        for key, f in other.terms.items():
            acc = terms.get(key)
            g = f if acc is None else acc + f
            if g.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = g
        return TensorOperator(self.p, self.arity, self.coeff, terms, self.slot_flavor)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        c %= self.p
        return TensorOperator(
            self.p, self.arity, self.coeff,
            {k: f.scale(c) for k, f in self.terms.items()},
            self.slot_flavor,
        )

    def max_slot_order(self) -> int:
        return max((max(bs, default=0) for bs, _ in self.terms), default=0)

    def max_payload(self) -> int:
        return max((c for _, c in self.terms), default=0)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (bs, c), f in sorted(self.terms.items()):
            factors = []
            fp = f.pretty()
            if fp != "1" or (not bs and c == 0):
                factors.append(f"({fp})" if "+" in fp else fp)
            factors.extend(f"d^{b}" if b else "1" for b in bs)
            if self.coeff != COEFF_O:
                factors.append(f"[d^{c}]")
            parts.append("(x)".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return (
            f"TensorOperator(p={self.p}, arity={self.arity}, coeff={self.coeff}, "
            f"{self.pretty()!r})"
        )


# -- normalization -----------------------------------------------------------


def _accumulate(out: dict, key, f: Polynomial):
    acc = out.get(key)
    g = f if acc is None else acc + f
    if g.is_zero():
        out.pop(key, None)
    else:
        out[key] = g


def _reduce_loose(p, fs, bs, c, out, restricted):
    """Collect interleaved coefficients at the far left.

    fs has length len(bs) + 1; fs[j] sits immediately right of slot j.
    Under the evaluation semantics every coefficient multiplies the
    operator's value, so coefficients commute across slots freely (the
    Leibniz rewrite applies to operator products, not to slot
    coefficients).  Emits into out, keyed by (slots, payload).
    """
    if restricted and any(b >= p for b in bs):
        return
    total = fs[0]
    for f in fs[1:]:
        if f.is_zero():
            return
        total = total * f
    if total.is_zero():
        return
    _accumulate(out, (tuple(bs), c), total)


def normalize_loose_terms(p, arity, coeff, loose, slot_flavor):
    """Build a TensorOperator from (fs, bs, payload, scalar) loose terms."""
    out: dict = {}
    restricted = slot_flavor == SLOT_RESTRICTED
    for fs, bs, c, scalar in loose:
        scalar %= p
        if scalar == 0:
            continue
        fs = list(fs)
        if scalar != 1:
            fs[0] = fs[0].scale(scalar)
        _reduce_loose(p, fs, list(bs), c, out, restricted)
    return TensorOperator(p, arity, coeff, out, slot_flavor)


# -- evaluation (the semantic oracle) -----------------------------------------


def evaluate(op: TensorOperator, args):
    """Apply the operator to polynomials in x; returns an element of P.

    P = O gives a Polynomial; Dres/DresOp give restricted WeylElements
    (the op tag evaluates through the opposite bimodule structure);
    Dfull gives a crystalline WeylElement.
    """
    if len(args) != op.arity:
        raise ArityMismatch(f"expected {op.arity} arguments, got {len(args)}")
    p = op.p
    for g in args:
        if g.p != p or g.var != "x":
            raise ModulusMismatch("arguments must be polynomials in x over F_p")
    if op.coeff == COEFF_O:
        total = Polynomial.zero(p)
        for (bs, _), f in op.terms.items():
            v = f
            for b, g in zip(bs, args):
                v = v * g.derivative(b)
                if v.is_zero():
                    break
            total = total + v
        return total
    flavor = CRYSTALLINE if op.coeff == COEFF_DFULL else RESTRICTED
    total = WeylElement.zero(p, flavor)
    for (bs, c), f in op.terms.items():
        v = f
        for b, g in zip(bs, args):
            v = v * g.derivative(b)
            if v.is_zero():
                break
        if v.is_zero():
            continue
        if op.coeff == COEFF_DRESOP:
            # left actions arrive through the opposite structure
            payload = WeylElement.monomial(p, 0, c, flavor=RESTRICTED)
            total = total + payload * WeylElement.from_polynomial(v, RESTRICTED)
        else:
            total = total + WeylElement(p, flavor, {(a, c): cf for a, cf in enumerate(v.coeffs) if cf})
    return total


def evaluations_agree(a: TensorOperator, b: TensorOperator, max_exp: int) -> bool:
    """Faithfulness oracle: compare on all monomial tuples with exponents <= max_exp."""
    if a.arity != b.arity:
        return False
    p = a.p
    for es in iter_product(range(max_exp + 1), repeat=a.arity):
        args = [Polynomial.monomial(p, e) for e in es]
        if evaluate(a, args) != evaluate(b, args):
            return False
    return True


# -- cosimplicial structure ----------------------------------------------------


def coface(op: TensorOperator, k: int) -> TensorOperator:
    """k-th coface, 0 <= k <= arity + 1.

    k = 0 prepends a unit slot; middle cofaces comultiply slot k; the
    top coface appends a unit slot (structure sheaf) or splits the
    payload (module coefficients, with the opposite-structure signs for
    DresOp).
    """
    i = op.arity
    if not 0 <= k <= i + 1:
        raise IndexOutOfRange(f"coface index {k} out of range for arity {i}")
    p = op.p
    out: dict = {}
    if k == 0:
        for (bs, c), f in op.terms.items():
            _accumulate(out, ((0,) + bs, c), f)
    elif k <= i:
        for (bs, c), f in op.terms.items():
            b = bs[k - 1]
            for j in range(b + 1):
                w = binom(b, j, p)
                if w:
                    _accumulate(out, (bs[: k - 1] + (j, b - j) + bs[k:], c), f.scale(w))
    else:
        if op.coeff == COEFF_O:
            for (bs, c), f in op.terms.items():
                _accumulate(out, (bs + (0,), c), f)
        elif op.coeff in (COEFF_DRES, COEFF_DFULL):
            for (bs, c), f in op.terms.items():
                for j in range(c + 1):
                    w = binom(c, j, p)
                    if w:
                        _accumulate(out, (bs + (j,), c - j), f.scale(w))
        else:  # DresOp: right action is left multiplication upstairs
            for (bs, c), f in op.terms.items():
                for j in range(c + 1):
                    w = binom(c, j, p)
                    if w:
                        sign = -1 if j % 2 else 1
                        _accumulate(out, (bs + (j,), c - j), f.scale(sign * w))
    return TensorOperator(p, i + 1, op.coeff, out, op.slot_flavor)


def codegeneracy(op: TensorOperator, k: int) -> TensorOperator:
    """Insert the constant 1 into argument k + 1 (0 <= k <= arity - 1)."""
    i = op.arity
    if i < 1 or not 0 <= k <= i - 1:
        raise IndexOutOfRange(f"codegeneracy index {k} out of range for arity {i}")
    out: dict = {}
    for (bs, c), f in op.terms.items():
        if bs[k] == 0:
            _accumulate(out, (bs[:k] + bs[k + 1:], c), f)
    return TensorOperator(op.p, i - 1, op.coeff, out, op.slot_flavor)


def cochain_differential(op: TensorOperator) -> TensorOperator:
    """Alternating sum of the cofaces; squares to zero."""
    total = TensorOperator.zero(op.p, op.arity + 1, op.coeff, op.slot_flavor)
    for k in range(op.arity + 2):
        piece = coface(op, k)
        total = total + (piece if k % 2 == 0 else -piece)
    return total


def normalized_projection_keys(op: TensorOperator):
    """Keys pending in the Dold-Kan normalized part (all slots >= 1)."""
    return {key for key in op.terms if all(b >= 1 for b in key[0])}


# -- cup product ----------------------------------------------------------------


def cup(a: TensorOperator, b: TensorOperator) -> TensorOperator:
    """Concatenation product with the sign (-1)^(ij).

    The left factor must have structure-sheaf coefficients; the result
    carries the right factor's coefficient tag.
    """
    if a.p != b.p:
        raise ModulusMismatch("mixed moduli")
    if a.slot_flavor != b.slot_flavor:
        raise FlavorMismatch("mixed slot flavors")
    if a.coeff != COEFF_O:
        raise CoefficientMismatch("cup requires structure-sheaf coefficients on the left")
    i, j = a.arity, b.arity
    sign = -1 if (i * j) % 2 else 1
    p = a.p
    loose = []
    one = Polynomial.one(p)
    for (bsa, _), fa in a.terms.items():
        for (bsb, cb), fb in b.terms.items():
            fs = [one] * (i + j + 1)
            fs[0] = fa
            fs[i] = fs[i] * fb
            loose.append((fs, list(bsa + bsb), cb, sign))
    return normalize_loose_terms(p, i + j, b.coeff, loose, a.slot_flavor)


# -- brace operations -------------------------------------------------------------


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def brace(a: TensorOperator, inserts) -> TensorOperator:
    """Brace operation a{a_1, ..., a_m}.

    Inserts must have structure-sheaf coefficients; the host may carry a
    module payload, which rides along unchanged.  The sign exponent is
    sum_l i_l (j_l - 1), where i_l counts the arguments of the result
    consumed before the l-th insertion.  Each insertion composes through
    the generalized Leibniz rule with multinomial coefficients mod p.
    """
    m = len(inserts)
    i = a.arity
    if m > i:
        raise TooManyInserts(f"{m} inserts into an arity-{i} operator")
    p = a.p
    for ins in inserts:
        if ins.p != p:
            raise ModulusMismatch("mixed moduli")
        if ins.coeff != COEFF_O:
            raise CoefficientMismatch("brace inserts must have structure-sheaf coefficients")
        if ins.slot_flavor != a.slot_flavor:
            raise FlavorMismatch("mixed slot flavors")
    if m == 0:
        return a
    js = [ins.arity for ins in inserts]
    n = i + sum(js) - m
    one = Polynomial.one(p)
    term_choices = [list(ins.terms.items()) for ins in inserts]
    loose = []
    for positions in _ordered_positions(i, m):
        offsets = [(q - 1) - l + sum(js[:l]) for l, q in enumerate(positions)]
        eps = sum(i_l * (j - 1) for i_l, j in zip(offsets, js)) % 2
        sign = -1 if eps else 1
        pos_map = {q: l for l, q in enumerate(positions)}
        for (bsa, ca), fa in a.terms.items():
            for combo in iter_product(*term_choices):
                comp_choices = [
                    list(_compositions(bsa[q - 1], js[l] + 1))
                    for l, q in enumerate(positions)
                ]
                for comps in iter_product(*comp_choices):
                    fs = [fa]
                    bs = []
                    alive = True
                    for s in range(1, i + 1):
                        if s not in pos_map:
                            bs.append(bsa[s - 1])
                            fs.append(one)
                            continue
                        l = pos_map[s]
                        (gs, _), gf = combo[l]
                        ks = comps[l]
                        w = multinom(ks, p)
                        if w == 0:
                            alive = False
                            break
                        lead = gf.derivative(ks[0]).scale(w)
                        if lead.is_zero():
                            alive = False
                            break
                        fs[-1] = fs[-1] * lead
                        for g_exp, kk in zip(gs, ks[1:]):
                            bs.append(g_exp + kk)
                            fs.append(one)
                    if alive:
                        loose.append((fs, bs, ca, sign))
    return normalize_loose_terms(p, n, a.coeff, loose, a.slot_flavor)


def brace_module_action(b: TensorOperator, inserts) -> TensorOperator:
    """Brace action on a module-coefficient operator; payload untouched."""
    return brace(b, inserts)


def gerstenhaber(a: TensorOperator, b: TensorOperator) -> TensorOperator:
    """[a, b] = a{b} - (-1)^((i-1)(j-1)) b{a} for structure-sheaf operators."""
    if a.coeff != COEFF_O or b.coeff != COEFF_O:
        raise CoefficientMismatch("the bracket is defined for structure-sheaf coefficients")
    first = brace(a, [b])
    second = brace(b, [a])
    sign = -1 if ((a.arity - 1) * (b.arity - 1)) % 2 else 1
    return first - second.scale(sign)


def _ordered_positions(arity: int, m: int):
    """Strictly increasing insertion slots q_1 < ... < q_m in 1..arity."""
    return combinations(range(1, arity + 1), m)


# -- the centrally embedded fiberwise-polynomial subcomplex ----------------------


class PolMonomial:
    """Monomial g(t) xi_1^(m_1) ... xi_i^(m_i) on the twisted fibers."""

    __slots__ = ("coefficient", "exponents")

    def __init__(self, coefficient: Polynomial, exponents):
        if coefficient.var != "t":
            raise ModulusMismatch("fiber monomial coefficients live in F_p[t]")
        self.coefficient = coefficient
        self.exponents = tuple(exponents)

    @property
    def arity(self) -> int:
        return len(self.exponents)

    def __repr__(self):
        xs = " ".join(f"xi_{l + 1}^{m}" for l, m in enumerate(self.exponents))
        return f"PolMonomial({self.coefficient.pretty()} {xs})"


def _t_poly_to_x(g: Polynomial) -> Polynomial:
    """Substitute t -> x^p."""
    p = g.p
    out = [0] * (p * g.degree() + 1 if g.coeffs else 0)
    for e, c in enumerate(g.coeffs):
        if c:
            out[p * e] = c
    return Polynomial(p, out, "x")


def pol_embed(mono: PolMonomial) -> TensorOperator:
    """t^e xi^(m_1)...xi^(m_i) -> x^(pe) d^(p m_1) (x) ... (x) d^(p m_i).

    Lands in structure-sheaf coefficients with crystalline slots; the
    image is central and the embedding commutes with the cofaces.
    """
    p = mono.coefficient.p
    bs = tuple(p * m for m in mono.exponents)
    f = _t_poly_to_x(mono.coefficient)
    return TensorOperator(
        p, mono.arity, COEFF_O, {(bs, 0): f}, SLOT_CRYSTALLINE
    )


def pol_coface(mono: PolMonomial, k: int):
    """Coface on the fiberwise-polynomial complex; returns PolMonomial terms.

    Mirrors the simplicial maps on the cotangent tower: k = 0 and
    k = arity + 1 insert an empty fiber slot; middle indices distribute
    an exponent over two adjacent slots binomially.
    """
    i = mono.arity
    if not 0 <= k <= i + 1:
        raise IndexOutOfRange(f"coface index {k} out of range for arity {i}")
    p = mono.coefficient.p
    if k == 0:
        return [PolMonomial(mono.coefficient, (0,) + mono.exponents)]
    if k == i + 1:
        return [PolMonomial(mono.coefficient, mono.exponents + (0,))]
    mk = mono.exponents[k - 1]
    out = []
    for j in range(mk + 1):
        w = binom(mk, j, p)
        if w:
            exps = mono.exponents[: k - 1] + (j, mk - j) + mono.exponents[k:]
            out.append(PolMonomial(mono.coefficient.scale(w), exps))
    return out
