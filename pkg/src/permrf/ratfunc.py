"""Permutation tests for x -> L(x) + c/(Tr(x) + b) on the top field.

b must lie outside F_q, which keeps the denominator Tr(x) + b away from
zero, and c must be nonzero; both are enforced when a RatFuncSpec is
built.  Elements cross this module as integer encodings.

Three tests decide whether the standard form (L = x) permutes:

  direct    evaluate everywhere and watch for a repeat,
  reduced   the induced map t -> t + Tr(c/(t + b)) on F_q is injective,
  pairwise  no pair x0 != y0 in F_q has Tr(c/((x0+b)(y0+b))) = 1.

They agree because f sends the fiber Tr(x) = t onto the fiber over the
reduced image of t, and the reduced map's difference at x0, y0 equals
(x0 - y0)(1 - Tr(c/((x0+b)(y0+b)))).

A general L routes by rank.  Invertible L reduces to the standard form
with numerator alpha*c, where Tr(L^{-1}(x)) = Tr(alpha*x).  Rank n-1
permutes exactly when the kernel generator has nonzero trace and no pair
x0 != y0 has Tr(beta*c/((x0+b)(y0+b))) = 0, beta being the trace-form
annihilator of the image.  Rank below n-1 never permutes: the image meets
each of the q fibers in at most q^(rank) points.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import _linalg
from .errors import (
    BadAlpha,
    BInBaseField,
    BZero,
    CZero,
    EvenCharacteristic,
    NotBijective,
    NotInSubfield,
    OutOfRange,
    SizeBudgetExceeded,
    UnsupportedDegree,
)
from .gf_core import Element, FieldTower, dual_basis, make_tower
from .linmaps import LinearizedPoly, invert_lin, rank_kernel_image


def _enc(x):
    return x.enc if isinstance(x, Element) else x


def _check_b(tower, b):
    if not 0 <= b < tower.size:
        raise OutOfRange(f"b encoding {b} outside field of size {tower.size}")
    if b == 0:
        raise BZero("b must be nonzero")
    if b < tower.q:
        raise BInBaseField("b must lie outside F_q")


def _check_c(tower, c):
    if not 0 <= c < tower.size:
        raise OutOfRange(f"c encoding {c} outside field of size {tower.size}")
    if c == 0:
        raise CZero("c must be nonzero")


@dataclass(frozen=True)
class RatFuncSpec:
    """The map x -> L(x) + c/(Tr(x) + b); L defaults to the identity."""

    tower: FieldTower = field(repr=False)
    b: int
    c: int
    L: Optional[LinearizedPoly] = None

    def __post_init__(self):
        object.__setattr__(self, "b", _enc(self.b))
        object.__setattr__(self, "c", _enc(self.c))
        _check_b(self.tower, self.b)
        _check_c(self.tower, self.c)
        if self.L is None:
            object.__setattr__(self, "L", LinearizedPoly.identity(self.tower))


class Criterion(NamedTuple):
    ok: bool
    witness: Optional[tuple]


class KernelCriterion(NamedTuple):
    exists: bool
    witness: Optional[tuple]


class TwistedForm(NamedTuple):
    alpha: int
    b2: int
    c2: int


def eval_rf(spec, x):
    tower = spec.tower
    top = tower.top
    den = top.add(tower.trace_table[x], spec.b)
    out = top.mul(spec.c, top.inv(den))
    if spec.L.is_identity:
        return top.add(x, out)
    return top.add(spec.L.eval_enc(x), out)


def is_permutation_direct(spec):
    """Evaluate the map on every element; True when no value repeats."""
    tower = spec.tower
    top = tower.top
    trace = tower.trace_table
    b, c = spec.b, spec.c
    seen = bytearray(tower.size)
    if spec.L.is_identity:
        for x in range(tower.size):
            y = top.add(x, top.mul(c, top.inv(top.add(trace[x], b))))
            if seen[y]:
                return False
            seen[y] = 1
        return True
    lin = spec.L.eval_enc
    for x in range(tower.size):
        y = top.add(lin(x), top.mul(c, top.inv(top.add(trace[x], b))))
        if seen[y]:
            return False
        seen[y] = 1
    return True


def reduced_map_eval(tower, b, c, t0):
    """t0 + Tr(c/(t0 + b)) for t0 in F_q; the induced map on traces."""
    top = tower.top
    w = top.mul(c, top.inv(top.add(t0, b)))
    return top.add(t0, tower.trace_table[w])


def is_permutation_reduced(tower, b, c):
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    seen = bytearray(tower.q)
    for t0 in range(tower.q):
        y = reduced_map_eval(tower, b, c, t0)
        if seen[y]:
            return False
        seen[y] = 1
    return True


def _pair_inverses(tower, b):
    top = tower.top
    return [top.inv(top.add(x0, b)) for x0 in range(tower.q)]


def pairwise_criterion(tower, b, c):
    """ok is False on the first pair x0 < y0 with Tr(c/((x0+b)(y0+b))) = 1,
    reported as the witness."""
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    top = tower.top
    trace = tower.trace_table
    invs = _pair_inverses(tower, b)
    for x0 in range(tower.q):
        cix = top.mul(c, invs[x0])
        for y0 in range(x0 + 1, tower.q):
            if trace[top.mul(cix, invs[y0])] == 1:
                return Criterion(False, (x0, y0))
    return Criterion(True, None)


def kernel_criterion(tower, b, c):
    """exists is True on the first pair x0 < y0 with
    Tr(c/((x0+b)(y0+b))) = 0, reported as the witness."""
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    top = tower.top
    trace = tower.trace_table
    invs = _pair_inverses(tower, b)
    for x0 in range(tower.q):
        cix = top.mul(c, invs[x0])
        for y0 in range(x0 + 1, tower.q):
            if trace[top.mul(cix, invs[y0])] == 0:
                return KernelCriterion(True, (x0, y0))
    return KernelCriterion(False, None)


def _permitted_c(tower, pair_products, c):
    trace = tower.trace_table
    mul = tower.top.mul
    for pij in pair_products:
        if trace[mul(c, pij)] == 1:
            return False
    return True


def _classify_chunk(args):
    p, m, n, g, h, budget, b, lo, hi = args
    tower = make_tower(p, m, n, g=g, h=h, size_budget=budget)
    top = tower.top
    invs = _pair_inverses(tower, b)
    products = [top.mul(invs[i], invs[j])
                for i in range(tower.q) for j in range(i + 1, tower.q)]
    return [c for c in range(max(lo, 1), hi)
            if _permitted_c(tower, products, c)]


def classify_c(tower, b, workers=1):
    """All c for which x + c/(Tr(x)+b) permutes, ascending encodings.

    Runs the pairwise test with early exit on every nonzero c, so the
    cost is q^(2n) pair evaluations in the worst case; towers whose
    squared size exceeds the budget are refused.
    """
    b = _enc(b)
    _check_b(tower, b)
    if tower.size ** 2 > tower.size_budget:
        raise SizeBudgetExceeded(
            f"classification needs {tower.size}^2 pair evaluations, "
            f"over the budget {tower.size_budget}")
    if workers > 1:
        bounds = [(tower.size * i) // workers for i in range(workers + 1)]
        jobs = [(tower.p, tower.m, tower.n, tower.mid.modulus,
                 tower.top.modulus, tower.size_budget, b, lo, hi)
                for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        out = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_classify_chunk, jobs):
                out.extend(chunk)
        return out
    return _classify_chunk((tower.p, tower.m, tower.n, tower.mid.modulus,
                            tower.top.modulus, tower.size_budget, b,
                            1, tower.size))


def closed_form_c(tower, b, d=None):
    """The distinguished numerator for b in F_{q^d} \\ F_q.

    Degree 2: (b^q - b)^(q+1).  Degree 3: -(b^q - b)^(q^2 + 1).  Other
    degrees have no closed form here.
    """
    b = _enc(b)
    _check_b(tower, b)
    if d is None:
        d = tower.n
    if d not in (2, 3):
        raise UnsupportedDegree(f"no closed form for degree {d}")
    if not tower.in_subfield_enc(b, d):
        raise NotInSubfield(
            f"b encoding {b} does not lie in the degree {d} subfield")
    top = tower.top
    w = top.sub(tower.frob_enc(b), b)
    if d == 2:
        return top.mul(w, tower.frob_enc(w))
    return top.neg(top.mul(w, tower.frob_enc(w, 2)))


def lifted_c_set(tower, b, d):
    """All c whose relative trace to F_{q^d} hits the closed form for b."""
    target = closed_form_c(tower, b, d)
    return [c for c in range(tower.size)
            if tower.trace_rel_enc(c, tower.n, d) == target]


def _image_annihilator(tower, image):
    """The nonzero beta with Tr(beta * w) = 0 for the given image basis."""
    n, q = tower.n, tower.q
    rows = []
    for w in image:
        rows.append([tower.trace_enc(tower.top.mul(w, q ** j))
                     for j in range(n)])
    basis = _linalg.nullspace(tower.mid, rows)
    if len(basis) != 1:
        raise NotBijective(
            f"image annihilator is not one dimensional (got {len(basis)})")
    return tower.top.undigits(basis[0])


def normalize_spec(spec):
    """(equivalent standard-form spec, alpha) for invertible L.

    The substitution x -> L^{-1}(x) then the twist by alpha, where
    Tr(L^{-1}(x)) = Tr(alpha * x), turn L(x) + c/(Tr(x)+b) into
    x + alpha*c/(Tr(x)+b) without changing whether it permutes.
    """
    tower = spec.tower
    if spec.L.is_identity:
        return spec, 1
    linv = invert_lin(spec.L)
    n, q = tower.n, tower.q
    power_basis = [q ** j if n > 1 else 1 for j in range(n)]
    duals = dual_basis(tower, power_basis)
    alpha = 0
    top = tower.top
    for j in range(n):
        t = tower.trace_enc(linv.eval_enc(power_basis[j]))
        alpha = top.add(alpha, top.mul(t, duals[j].enc))
    return RatFuncSpec(tower, spec.b, top.mul(alpha, spec.c)), alpha


def is_permutation(spec):
    """Permutation verdict for any L, routed by the rank of L."""
    tower = spec.tower
    if spec.L.is_identity:
        return pairwise_criterion(tower, spec.b, spec.c).ok
    rank, kernel, image = rank_kernel_image(spec.L)
    if rank == tower.n:
        std, _ = normalize_spec(spec)
        return pairwise_criterion(tower, std.b, std.c).ok
    if rank < tower.n - 1:
        return False
    if tower.trace_enc(kernel[0]) == 0:
        return False
    beta = _image_annihilator(tower, image)
    shifted = tower.top.mul(beta, spec.c)
    return not kernel_criterion(tower, spec.b, shifted).exists


def remark2_transform(tower, b, c, alpha=None):
    """Twist a degree 2 standard form into x + c2/(x^q - x + b2).

    c2 = alpha^(q+1) * c and b2 = alpha^q * b for an alpha with
    alpha^(q-1) = -1; when alpha is omitted the smallest such encoding
    is used.  The twisted map permutes exactly when the original does,
    and its denominator stays nonzero because Tr(b2) != 0.
    """
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    if tower.n != 2:
        raise UnsupportedDegree("the twist is specific to degree 2")
    top = tower.top
    q = tower.q
    minus_one = top.neg(1)
    if alpha is None:
        alpha = next(a for a in range(1, tower.size)
                     if top.pow(a, q - 1) == minus_one)
    else:
        alpha = _enc(alpha)
        if alpha == 0 or top.pow(alpha, q - 1) != minus_one:
            raise BadAlpha(f"alpha encoding {alpha} has alpha^(q-1) != -1")
    aq = tower.frob_enc(alpha)
    return TwistedForm(alpha, top.mul(aq, b), top.mul(top.mul(aq, alpha), c))


def eval_twisted(tower, tf, x):
    top = tower.top
    den = top.add(top.sub(tower.frob_table[x], x), tf.b2)
    return top.add(x, top.mul(tf.c2, top.inv(den)))


def is_permutation_twisted(tower, tf):
    seen = bytearray(tower.size)
    for x in range(tower.size):
        y = eval_twisted(tower, tf, x)
        if seen[y]:
            return False
        seen[y] = 1
    return True


def remark3_check(tower, b, c):
    """Whether Tr(c/(u + b*v + b^2)) avoids 1 on all of F_q x F_q.

    Degree 3 and odd characteristic only.  The denominator never
    vanishes: a zero would make b quadratic over F_q.
    """
    if tower.n != 3:
        raise UnsupportedDegree("the scan is specific to degree 3")
    if tower.p == 2:
        raise EvenCharacteristic("the scan needs odd characteristic")
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    top = tower.top
    trace = tower.trace_table
    bsq = top.mul(b, b)
    for v in range(tower.q):
        base = top.add(top.mul(b, v), bsq)
        for u in range(tower.q):
            w = top.mul(c, top.inv(top.add(u, base)))
            if trace[w] == 1:
                return False
    return True
