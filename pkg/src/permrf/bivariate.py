"""Bivariate certificates for the permutation criteria.

Polynomials in X and Y over the top field are stored as rectangular
coefficient grids, grid[i][j] holding the encoding of the X^i Y^j
coefficient, trimmed so the last row and column are nonzero.  The maps
under test leave F_q-rational points of these grids in correspondence
with failing pairs of the criteria:

  two_variable_curve (degree 2)   N((X+b)(Y+b)) - Tr(c^q (X+b)(Y+b))
  two_variable_curve (degree 3)   N((X+b)(Y+b))
                                  - Tr(c^(q^2) (X+b)(X+b^q)(Y+b)(Y+b^q))
  kernel curve (degree 3)         the trace part alone

At points of F_q x F_q each curve evaluates to N(w) (1 - Tr(c/w)) with
w = (x0+b)(y0+b), except the kernel curve which gives N(w) Tr(c/w), so
off-diagonal zeros are exactly the pairwise (resp. kernel) witnesses.

conjugate_factor_search looks for a monic bilinear g with
f = g * sigma(g) * ... * sigma^(n-1)(g), pruning candidates through the
edge coefficients: the top-edge column f[n][n-j] lists the elementary
symmetric functions of the conjugates of beta, the right edge those of
gamma, and f[0][0] is the norm of delta.

The Weil gate for smoothness arguments is evaluated in exact integer
arithmetic: q - (d-1)(d-2) sqrt(q) - 2d + 1 > 0 exactly when
q - 2d + 1 is positive and its square exceeds ((d-1)(d-2))^2 q.
"""

import math
from dataclasses import dataclass, field

from .errors import DegreeTooSmall, SizeBudgetExceeded, UnsupportedDegree, WrongDegree
from .gf_core import FieldTower
from .ratfunc import _check_b, _check_c, _enc


def _trim(grid):
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    while rows > 1 and all(x == 0 for x in grid[rows - 1]):
        rows -= 1
    while cols > 1 and all(grid[i][cols - 1] == 0 for i in range(rows)):
        cols -= 1
    return tuple(tuple(grid[i][j] for j in range(cols)) for i in range(rows))


@dataclass(frozen=True)
class BivarPoly:
    tower: FieldTower = field(repr=False)
    grid: tuple

    def __post_init__(self):
        object.__setattr__(self, "grid", _trim([list(r) for r in self.grid]))

    @property
    def bidegree(self):
        return (len(self.grid) - 1, len(self.grid[0]) - 1)

    def coeff(self, i, j):
        if i < len(self.grid) and j < len(self.grid[0]):
            return self.grid[i][j]
        return 0

    def expect_bidegree(self, dx, dy):
        if self.bidegree != (dx, dy):
            raise WrongDegree(
                f"bidegree {self.bidegree}, expected {(dx, dy)}")
        return self

    def is_symmetric(self):
        dx, dy = self.bidegree
        if dx != dy:
            return False
        return all(self.grid[i][j] == self.grid[j][i]
                   for i in range(dx + 1) for j in range(dy + 1))

    def is_fq_stable(self):
        return apply_sigma(self, 1) == self

    def pretty(self):
        terms = []
        for i in range(len(self.grid) - 1, -1, -1):
            for j in range(len(self.grid[0]) - 1, -1, -1):
                a = self.grid[i][j]
                if a == 0:
                    continue
                mono = "*".join(p for p in (
                    "" if i == 0 else ("X" if i == 1 else f"X^{i}"),
                    "" if j == 0 else ("Y" if j == 1 else f"Y^{j}")) if p)
                astr = self.tower.pretty_enc("top", a)
                if " " in astr:
                    astr = f"({astr})"
                if not mono:
                    terms.append(astr)
                elif a == 1:
                    terms.append(mono)
                else:
                    terms.append(f"{astr}*{mono}")
        return " + ".join(terms) if terms else "0"


def constant(tower, a):
    return BivarPoly(tower, ((a,),))


def bilinear(tower, xy, x, y, const):
    """xy*XY + x*X + y*Y + const."""
    return BivarPoly(tower, ((const, y), (x, xy)))


def add(f, g):
    top = f.tower.top
    rows = max(len(f.grid), len(g.grid))
    cols = max(len(f.grid[0]), len(g.grid[0]))
    out = [[top.add(f.coeff(i, j), g.coeff(i, j)) for j in range(cols)]
           for i in range(rows)]
    return BivarPoly(f.tower, out)


def neg(f):
    top = f.tower.top
    return BivarPoly(f.tower, [[top.neg(x) for x in row] for row in f.grid])


def sub(f, g):
    return add(f, neg(g))


def scalar_mul(f, a):
    top = f.tower.top
    a = _enc(a)
    return BivarPoly(f.tower, [[top.mul(a, x) for x in row] for row in f.grid])


def mul(f, g):
    top = f.tower.top
    fr, fc = len(f.grid), len(f.grid[0])
    gr, gc = len(g.grid), len(g.grid[0])
    out = [[0] * (fc + gc - 1) for _ in range(fr + gr - 1)]
    for i in range(fr):
        for j in range(fc):
            a = f.grid[i][j]
            if a == 0:
                continue
            for k in range(gr):
                for l in range(gc):
                    b = g.grid[k][l]
                    if b != 0:
                        out[i + k][j + l] = top.add(out[i + k][j + l],
                                                    top.mul(a, b))
    return BivarPoly(f.tower, out)


def apply_sigma(f, i=1):
    """Apply x -> x^(q^i) to every coefficient."""
    frob = f.tower.frob_enc
    return BivarPoly(f.tower, [[frob(x, i) for x in row] for row in f.grid])


def norm_poly(f):
    out = f
    for i in range(1, f.tower.n):
        out = mul(out, apply_sigma(f, i))
    return out


def trace_poly(f):
    out = f
    for i in range(1, f.tower.n):
        out = add(out, apply_sigma(f, i))
    return out


def eval_poly(f, x, y):
    top = f.tower.top
    acc = 0
    for row in reversed(f.grid):
        racc = 0
        for a in reversed(row):
            racc = top.add(top.mul(racc, y), a)
        acc = top.add(top.mul(acc, x), racc)
    return acc


def _shifted_product(tower, b):
    """(X + b)(Y + b) as a grid."""
    bsq = tower.top.mul(b, b)
    return bilinear(tower, 1, b, b, bsq)


def build_f2(tower, b, c):
    """N((X+b)(Y+b)) - Tr(c^q (X+b)(Y+b)); bidegree (2, 2)."""
    if tower.n != 2:
        raise UnsupportedDegree("this curve is specific to degree 2")
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    w = _shifted_product(tower, b)
    cq = tower.frob_enc(c)
    return sub(norm_poly(w), trace_poly(scalar_mul(w, cq))).expect_bidegree(2, 2)


def _quartic_product(tower, b):
    """(X+b)(X+b^q)(Y+b)(Y+b^q) as a grid."""
    top = tower.top
    bq = tower.frob_enc(b)
    s = top.add(b, bq)
    p = top.mul(b, bq)
    u = ((p,), (s,), (1,))
    z = ((p, s, 1),)
    return mul(BivarPoly(tower, u), BivarPoly(tower, z))


def build_f3(tower, b, c):
    """N((X+b)(Y+b)) - Tr(c^(q^2) (X+b)(X+b^q)(Y+b)(Y+b^q)); bidegree (3, 3)."""
    if tower.n != 3:
        raise UnsupportedDegree("this curve is specific to degree 3")
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    w = _shifted_product(tower, b)
    cqq = tower.frob_enc(c, 2)
    kern = trace_poly(scalar_mul(_quartic_product(tower, b), cqq))
    return sub(norm_poly(w), kern).expect_bidegree(3, 3)


def build_f3_kernel(tower, b, c):
    """Tr(c^(q^2) (X+b)(X+b^q)(Y+b)(Y+b^q)); tight bidegree (2, 2).

    Tightness is a consequence of 1, b + b^q, b^(q+1) spanning: the Y^2
    column reads Tr(c^(q^2) b^(q+1)), Tr(c^(q^2) (b + b^q)), Tr(c^(q^2)),
    which cannot all vanish for nonzero c.
    """
    if tower.n != 3:
        raise UnsupportedDegree("this curve is specific to degree 3")
    b, c = _enc(b), _enc(c)
    _check_b(tower, b)
    _check_c(tower, c)
    cqq = tower.frob_enc(c, 2)
    kern = trace_poly(scalar_mul(_quartic_product(tower, b), cqq))
    return kern.expect_bidegree(2, 2)


def count_offdiag_points(f):
    """Ordered pairs (x0, y0) in F_q^2 with x0 != y0 and f(x0, y0) = 0."""
    q = f.tower.q
    count = 0
    for x0 in range(q):
        for y0 in range(q):
            if x0 != y0 and eval_poly(f, x0, y0) == 0:
                count += 1
    return count


def _charpoly_roots(tower, edge):
    """Roots of T^n + sum_j (-1)^j edge[j-1] T^(n-j), edge[j-1] = e_j."""
    top = tower.top
    n = tower.n
    coeffs = [1]
    sign = 1
    for e in edge:
        sign = -1 if sign == 1 else 1
        coeffs.append(top.neg(e) if sign == -1 else e)
    roots = []
    for t in range(tower.size):
        acc = 0
        for a in coeffs:
            acc = top.add(top.mul(acc, t), a)
        if acc == 0:
            roots.append(t)
    return roots


def conjugate_factor_search(f):
    """First (beta, gamma, delta) with f = prod sigma^i(XY + beta X + gamma Y
    + delta), or None.

    Requires the X^n Y^n coefficient to be 1.  Candidates for beta and
    gamma are the roots of the charpoly read off the grid edges, delta
    runs through the norm fiber over f[0][0]; the first verified triple
    in ascending (beta, gamma, delta) order wins, so the result is
    deterministic.
    """
    tower = f.tower
    n = tower.n
    if tower.size ** 3 > tower.size_budget:
        raise SizeBudgetExceeded(
            f"factor search space {tower.size}^3 over the budget "
            f"{tower.size_budget}")
    if f.coeff(n, n) != 1:
        return None
    betas = _charpoly_roots(tower, [f.coeff(n, n - j) for j in range(1, n + 1)])
    gammas = _charpoly_roots(tower, [f.coeff(n - j, n) for j in range(1, n + 1)])
    norm_target = f.coeff(0, 0)
    deltas = [d for d in range(tower.size)
              if tower.norm_enc(d) == norm_target]
    for beta in sorted(betas):
        for gamma in sorted(gammas):
            for delta in deltas:
                g = bilinear(tower, 1, beta, gamma, delta)
                if norm_poly(g) == f:
                    return (beta, gamma, delta)
    return None


def weil_threshold(d):
    """The sqrt(q) value above which the point-count gate opens.

    Positive root of s^2 - (d-1)(d-2)s - (2d-1); informational only,
    the gate itself never touches floats.
    """
    if d < 2:
        raise DegreeTooSmall(f"degree {d} has no smooth model to bound")
    a = (d - 1) * (d - 2)
    return (a + math.sqrt(a * a + 4 * (2 * d - 1))) / 2


def weil_holds(q, d):
    """Whether q + 1 - (d-1)(d-2) sqrt(q) - 2d > 0, in exact integers."""
    if d < 2:
        raise DegreeTooSmall(f"degree {d} has no smooth model to bound")
    margin = q - 2 * d + 1
    if margin <= 0:
        return False
    a = (d - 1) * (d - 2)
    return margin * margin > a * a * q
