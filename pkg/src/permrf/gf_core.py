"""Arithmetic in a two-step tower of finite fields.

The tower is F_p < F_q < F_{q^n} with q = p^m.  The middle field is
F_p[u]/(g) for a monic irreducible g of degree m, the top field is
F_q[v]/(h) for a monic irreducible h of degree n over the middle field.
The top field is always represented as polynomials in v with middle-field
coefficients; it is never rebuilt as a single extension of F_p.

Elements travel as integer encodings.  At each level the encoding of
c_{d-1} x^{d-1} + ... + c_1 x + c_0 is the integer whose base-s digits,
low to high, are the encodings of c_0 .. c_{d-1}, where s is the size of
the coefficient field.  Digit nesting makes the subfield chain literal:
the middle field sits inside the top field as encodings 0..q-1, and the
prime field as encodings 0..p-1.  Encoding 0 is the additive identity and
encoding 1 the multiplicative identity at every level.

Moduli are canonical unless the caller supplies their own: the chosen g
(or h) is the monic irreducible polynomial whose coefficient tuple
(c_0, ..., c_{d-1}), read low to high as a base-s integer, is smallest.
Irreducibility of a monic degree-d polynomial f is decided by checking
gcd(X^(s^i) - X, f) = 1 for 1 <= i <= d // 2.

Multiplication and inversion run on exponential and logarithm tables
built from the smallest-encoding generator of each level, so a tower of
size q^n costs O(q^n) memory.  make_tower refuses to build towers larger
than the size budget.
"""

from functools import lru_cache

from . import _linalg
from .errors import (
    BInBaseField,
    BZero,
    DegreeZero,
    DivisionByZero,
    InvalidModulus,
    LevelMismatch,
    NonDivisorDegrees,
    NotABasis,
    NotInSubfield,
    NotPrime,
    OutOfRange,
    SizeBudgetExceeded,
    UnsupportedDegree,
)

DEFAULT_SIZE_BUDGET = 1 << 24

LEVELS = ("base", "mid", "top")


def _is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class _PrimeField:
    """F_p with encodings 0..p-1; arithmetic is plain modular arithmetic."""

    def __init__(self, p):
        self.char = p
        self.size = p
        self.degree = 1

    def add(self, a, b):
        return (a + b) % self.size

    def sub(self, a, b):
        return (a - b) % self.size

    def neg(self, a):
        return (-a) % self.size

    def mul(self, a, b):
        return (a * b) % self.size

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return pow(a, self.size - 2, self.size)

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("negative power of 0")
            return 0
        return pow(a, e % (self.size - 1), self.size)


def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(k, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b != 0:
                out[i + j] = k.add(out[i + j], k.mul(a, b))
    return _poly_trim(out)


def _poly_mod(k, f, g):
    """Remainder of f modulo g, g monic."""
    f = list(f)
    dg = len(g) - 1
    while len(f) > dg:
        lead = f[-1]
        if lead != 0:
            shift = len(f) - 1 - dg
            for i in range(dg):
                f[shift + i] = k.sub(f[shift + i], k.mul(lead, g[i]))
        f.pop()
    return _poly_trim(f)


def _poly_powmod(k, f, e, g):
    result = [1]
    f = _poly_mod(k, f, g)
    while e > 0:
        if e & 1:
            result = _poly_mod(k, _poly_mul(k, result, f), g)
        f = _poly_mod(k, _poly_mul(k, f, f), g)
        e >>= 1
    return result


def _poly_gcd(k, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, _poly_mod(k, f, _poly_make_monic(k, g))
    return f


def _poly_make_monic(k, f):
    lead = f[-1]
    if lead == 1:
        return f
    scale = k.inv(lead)
    return [k.mul(scale, c) for c in f]


def _is_irreducible(k, f):
    """Monic f over field k; gcd(X^(s^i) - X, f) = 1 for i up to deg(f)//2."""
    d = len(f) - 1
    if d < 1:
        return False
    if f[0] == 0 and d > 1:
        return False
    x = [0, 1]
    r = x
    for _ in range(d // 2):
        r = _poly_powmod(k, r, k.size, f)
        diff = _poly_trim([k.sub(ri, xi) for ri, xi in
                           zip(r + [0] * len(x), x + [0] * len(r))])
        if len(_poly_gcd(k, f, diff)) != 1:
            return False
    return True


def _canonical_modulus(k, d):
    """Smallest monic irreducible of degree d over k, by coefficient code."""
    s = k.size
    for code in range(s ** d):
        coeffs = []
        c = code
        for _ in range(d):
            c, digit = divmod(c, s)
            coeffs.append(digit)
        f = coeffs + [1]
        if _is_irreducible(k, f):
            return tuple(f)
    raise InvalidModulus(f"no irreducible of degree {d} found")


def _factor_int(x):
    primes = []
    f = 2
    while f * f <= x:
        if x % f == 0:
            primes.append(f)
            while x % f == 0:
                x //= f
        f += 1 if f == 2 else 2
    if x > 1:
        primes.append(x)
    return primes


class _ExtField:
    """Extension of a ground field by a monic irreducible modulus.

    Encodings nest the ground field's: an element's digits in base
    ground.size are the ground encodings of its coefficients.  After
    construction all products go through exp/log tables.
    """

    def __init__(self, ground, modulus):
        self.ground = ground
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        if self.degree < 1:
            raise InvalidModulus("modulus must have degree at least 1")
        if modulus[-1] != 1:
            raise InvalidModulus("modulus must be monic")
        if not _is_irreducible(ground, list(modulus)):
            raise InvalidModulus(f"modulus {tuple(modulus)} is reducible")
        self.char = ground.char
        self.size = ground.size ** self.degree
        self._build_tables()
        if self.char == 2:
            self.add = self._add_xor
            self.neg = self._neg_char2
            self.sub = self._add_xor

    # Construction-time arithmetic, before the tables exist.

    def _raw_mul(self, a, b):
        fa = self.digits(a)
        fb = self.digits(b)
        prod = _poly_mod(self.ground, _poly_mul(self.ground, fa, fb),
                         list(self.modulus))
        return self.undigits(prod)

    def _raw_pow(self, a, e):
        result = 1
        while e > 0:
            if e & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return result

    def _build_tables(self):
        order = self.size - 1
        if order == 1:
            self.generator = 1
            self._exp = [1, 1]
            self._log = [None, 0]
            return
        prime_parts = [order // f for f in _factor_int(order)]
        gen = None
        for cand in range(2, self.size):
            if all(self._raw_pow(cand, e) != 1 for e in prime_parts):
                gen = cand
                break
        if gen is None:
            raise InvalidModulus("no generator found; modulus not irreducible")
        self.generator = gen
        exp = [1] * (2 * order - 1)
        log = [None] * self.size
        acc = 1
        for i in range(order):
            exp[i] = acc
            log[acc] = i
            acc = self._raw_mul(acc, gen)
        if acc != 1:
            raise InvalidModulus("generator order wrong; modulus not irreducible")
        for i in range(order, 2 * order - 1):
            exp[i] = exp[i - order]
        self._exp = exp
        self._log = log

    # Digit conversions.

    def digits(self, a, width=None):
        s = self.ground.size
        out = []
        while a:
            a, r = divmod(a, s)
            out.append(r)
        if width is not None:
            out.extend([0] * (width - len(out)))
        return out

    def undigits(self, coeffs):
        s = self.ground.size
        out = 0
        for c in reversed(coeffs):
            out = out * s + c
        return out

    # Field operations on encodings.

    def add(self, a, b):
        s = self.ground.size
        out = 0
        scale = 1
        while a or b:
            out += self.ground.add(a % s, b % s) * scale
            a //= s
            b //= s
            scale *= s
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        s = self.ground.size
        out = 0
        scale = 1
        while a:
            out += self.ground.neg(a % s) * scale
            a //= s
            scale *= s
        return out

    def _add_xor(self, a, b):
        return a ^ b

    def _neg_char2(self, a):
        return a

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self._exp[self.size - 1 - self._log[a]]

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("negative power of 0")
            return 0
        return self._exp[(self._log[a] * e) % (self.size - 1)]


class Element:
    """A field element bound to a tower and a level, wrapping an encoding.

    Operators accept a plain int as the other operand and read it as an
    encoding at the same level.  Mixing levels raises LevelMismatch; convert
    explicitly with at_level.
    """

    __slots__ = ("tower", "level", "enc")

    def __init__(self, tower, level, enc):
        ops = tower.ops(level)
        if not 0 <= enc < ops.size:
            raise OutOfRange(f"encoding {enc} outside field of size {ops.size}")
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "enc", enc)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.tower is not self.tower:
                raise LevelMismatch("elements from different towers")
            if other.level != self.level:
                raise LevelMismatch(
                    f"cannot combine {self.level} with {other.level}; "
                    "convert with at_level first")
            return other.enc
        if isinstance(other, int):
            ops = self.tower.ops(self.level)
            if not 0 <= other < ops.size:
                raise OutOfRange(f"encoding {other} outside field of size {ops.size}")
            return other
        return None

    def _make(self, enc):
        return Element(self.tower, self.level, enc)

    def __add__(self, other):
        enc = self._coerce(other)
        if enc is None:
            return NotImplemented
        return self._make(self.tower.ops(self.level).add(self.enc, enc))

    __radd__ = __add__

    def __sub__(self, other):
        enc = self._coerce(other)
        if enc is None:
            return NotImplemented
        return self._make(self.tower.ops(self.level).sub(self.enc, enc))

    def __rsub__(self, other):
        enc = self._coerce(other)
        if enc is None:
            return NotImplemented
        return self._make(self.tower.ops(self.level).sub(enc, self.enc))

    def __mul__(self, other):
        enc = self._coerce(other)
        if enc is None:
            return NotImplemented
        return self._make(self.tower.ops(self.level).mul(self.enc, enc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        enc = self._coerce(other)
        if enc is None:
            return NotImplemented
        ops = self.tower.ops(self.level)
        return self._make(ops.mul(self.enc, ops.inv(enc)))

    def __rtruediv__(self, other):
        enc = self._coerce(other)
        if enc is None:
            return NotImplemented
        ops = self.tower.ops(self.level)
        return self._make(ops.mul(enc, ops.inv(self.enc)))

    def __neg__(self):
        return self._make(self.tower.ops(self.level).neg(self.enc))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return self._make(self.tower.ops(self.level).pow(self.enc, e))

    def __eq__(self, other):
        if isinstance(other, Element):
            return (self.tower is other.tower and self.level == other.level
                    and self.enc == other.enc)
        if isinstance(other, int):
            return self.enc == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.tower), self.level, self.enc))

    def __bool__(self):
        return self.enc != 0

    def __int__(self):
        return self.enc

    def __repr__(self):
        return f"<{self.level} {self.enc}: {self.pretty()}>"

    def pretty(self):
        return self.tower.pretty_enc(self.level, self.enc)

    def coeffs(self):
        """Coefficient encodings over the next level down, low to high."""
        ops = self.tower.ops(self.level)
        if isinstance(ops, _PrimeField):
            return (self.enc,)
        return tuple(ops.digits(self.enc, ops.degree))

    def at_level(self, level):
        """The same element re-bound at another level, if it lies there."""
        if level not in LEVELS:
            raise LevelMismatch(f"unknown level {level!r}")
        if level == self.level:
            return self
        target = self.tower.ops(level)
        if self.enc < target.size:
            return Element(self.tower, level, self.enc)
        raise NotInSubfield(
            f"{self.level} encoding {self.enc} does not lie in {level}")


class FieldTower:
    """Container for the three levels plus the tables keyed to the top one.

    Public attributes: p, m, n, q, size, base, mid, top, field_spec,
    frobenius_matrix, frob_table, trace_table.  Do not construct directly;
    go through make_tower so instances are shared.
    """

    def __init__(self, p, m, n, g=None, h=None, size_budget=None):
        if not isinstance(p, int) or not _is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if m < 1 or n < 1:
            raise DegreeZero("extension degrees must be at least 1")
        budget = DEFAULT_SIZE_BUDGET if size_budget is None else size_budget
        if p ** (m * n) > budget:
            raise SizeBudgetExceeded(
                f"{p}^{m * n} exceeds the size budget {budget}")
        self.p = p
        self.m = m
        self.n = n
        self.q = p ** m
        self.size = self.q ** n
        self.size_budget = budget
        self.base = _PrimeField(p)
        if g is not None:
            g = tuple(g)
            if len(g) != m + 1:
                raise InvalidModulus(f"g must have degree {m}")
        self.mid = _ExtField(self.base, g or _canonical_modulus(self.base, m))
        if h is not None:
            h = tuple(h)
            if len(h) != n + 1:
                raise InvalidModulus(f"h must have degree {n}")
        self.top = _ExtField(self.mid, h or _canonical_modulus(self.mid, n))
        self._levels = {"base": self.base, "mid": self.mid, "top": self.top}
        self._norm_exp = (self.size - 1) // (self.q - 1)
        self._build_frobenius()
        self._build_trace()

    def _build_frobenius(self):
        """Matrix of x -> x^q on the power basis 1, v, ..., v^(n-1), then
        the full permutation table by matrix-vector products."""
        n, q = self.n, self.q
        cols = []
        for j in range(n):
            image = self.top.pow(q ** j, q)
            cols.append(self.top.digits(image, n))
        self.frobenius_matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        table = [0] * self.size
        for x in range(self.size):
            v = self.top.digits(x, n)
            table[x] = self.top.undigits(_linalg.matvec(self.mid, self.frobenius_matrix, v))
        self.frob_table = table

    def _build_trace(self):
        frob = self.frob_table
        table = [0] * self.size
        add = self.top.add
        for x in range(self.size):
            acc = x
            t = x
            for _ in range(self.n - 1):
                t = frob[t]
                acc = add(acc, t)
            table[x] = acc
        self.trace_table = table

    @property
    def field_spec(self):
        return f"{self.p}^{self.m}:{self.n}"

    def ops(self, level):
        try:
            return self._levels[level]
        except KeyError:
            raise LevelMismatch(f"unknown level {level!r}") from None

    def element(self, level, enc):
        return Element(self, level, enc)

    def zero(self, level="top"):
        return Element(self, level, 0)

    def one(self, level="top"):
        return Element(self, level, 1)

    def gen(self, level="top"):
        """The distinguished root: v at the top level, u at the middle."""
        ops = self.ops(level)
        if isinstance(ops, _PrimeField) or ops.degree == 1:
            raise LevelMismatch(f"level {level!r} adjoins no root")
        return Element(self, level, ops.ground.size)

    # Encoding-level helpers for hot loops.

    def frob_enc(self, a, i=1):
        if not 0 <= i < self.n:
            raise OutOfRange(f"Frobenius power {i} outside 0..{self.n - 1}")
        for _ in range(i):
            a = self.frob_table[a]
        return a

    def trace_enc(self, a):
        return self.trace_table[a]

    def norm_enc(self, a):
        if a == 0:
            return 0
        return self.top.pow(a, self._norm_exp)

    def in_subfield_enc(self, a, d):
        if d < 1 or self.n % d != 0:
            raise NonDivisorDegrees(f"{d} does not divide {self.n}")
        t = a
        for _ in range(d):
            t = self.frob_table[t]
        return t == a

    def trace_rel_enc(self, a, frm, to):
        """Relative trace from F_{q^frm} down to F_{q^to}."""
        if frm < 1 or to < 1 or frm % to != 0 or self.n % frm != 0:
            raise NonDivisorDegrees(
                f"need to | frm | n, got to={to} frm={frm} n={self.n}")
        if not self.in_subfield_enc(a, frm):
            raise NotInSubfield(f"encoding {a} is not in F_q^{frm}")
        step = self.q ** to
        acc = 0
        t = a
        for _ in range(frm // to):
            acc = self.top.add(acc, t)
            t = self.top.pow(t, step)
        return acc

    def elements(self, level="top"):
        return range(self.ops(level).size)

    # Rendering.

    def pretty_enc(self, level, enc):
        ops = self.ops(level)
        if isinstance(ops, _PrimeField):
            return str(enc)
        var = "v" if level == "top" else "u"
        coeffs = ops.digits(enc, ops.degree)
        terms = []
        for i in range(ops.degree - 1, -1, -1):
            c = coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(self._coeff_str(level, c))
                continue
            xi = var if i == 1 else f"{var}^{i}"
            if c == 1:
                terms.append(xi)
            else:
                cs = self._coeff_str(level, c)
                if " " in cs:
                    cs = f"({cs})"
                terms.append(f"{cs}*{xi}")
        return " + ".join(terms) if terms else "0"

    def _coeff_str(self, level, c):
        if level == "top" and self.m > 1:
            return self.pretty_enc("mid", c)
        return str(c)

    def __repr__(self):
        return f"FieldTower({self.field_spec})"


@lru_cache(maxsize=None)
def make_tower(p, m, n, g=None, h=None, size_budget=None):
    """Build (or fetch the cached) tower F_p < F_(p^m) < F_(p^(m*n)).

    g and h, when given, must be coefficient tuples (low to high, monic)
    for the middle and top moduli; otherwise the canonical smallest
    irreducibles are used.  size_budget caps p^(m*n); the default refuses
    fields beyond 2^24 elements.
    """
    return FieldTower(p, m, n, g=g, h=h, size_budget=size_budget)


def frobenius(a, i=1):
    """a^(q^i) for a top-level element, 0 <= i < n."""
    if a.level != "top":
        raise LevelMismatch("frobenius acts on top-level elements")
    return Element(a.tower, "top", a.tower.frob_enc(a.enc, i))


def trace_rel(a, frm, to):
    """Relative trace of a from F_{q^frm} onto F_{q^to}, as a top element."""
    if a.level != "top":
        raise LevelMismatch("trace_rel acts on top-level elements")
    return Element(a.tower, "top", a.tower.trace_rel_enc(a.enc, frm, to))


def trace(a):
    """Absolute trace onto F_q, as a top element with encoding below q."""
    if a.level != "top":
        raise LevelMismatch("trace acts on top-level elements")
    return Element(a.tower, "top", a.tower.trace_enc(a.enc))


def norm(a):
    """Norm onto F_q, as a top element with encoding below q."""
    if a.level != "top":
        raise LevelMismatch("norm acts on top-level elements")
    return Element(a.tower, "top", a.tower.norm_enc(a.enc))


def invert(a):
    return Element(a.tower, a.level, a.tower.ops(a.level).inv(a.enc))


def is_in_subfield(a, d):
    """Whether a top-level element lies in the intermediate field F_{q^d}."""
    if a.level != "top":
        raise LevelMismatch("subfield test acts on top-level elements")
    return a.tower.in_subfield_enc(a.enc, d)


def dual_basis(tower, basis):
    """Dual of a basis of the top field over the middle one.

    basis is a sequence of n top-level elements (or encodings) b_i; the
    result is the tuple of elements d_k with Tr(b_i * d_k) = [i == k].
    Raises NotABasis when the Gram matrix of the trace form is singular,
    which happens exactly when the inputs fail to be a basis.
    """
    n = tower.n
    encs = [b.enc if isinstance(b, Element) else b for b in basis]
    if len(encs) != n:
        raise NotABasis(f"need exactly {n} elements, got {len(encs)}")
    gram = [[tower.trace_enc(tower.top.mul(bi, bj)) for bj in encs]
            for bi in encs]
    inv = _linalg.inv_matrix(tower.mid, gram)
    if inv is None:
        raise NotABasis("trace Gram matrix is singular")
    out = []
    for k in range(n):
        acc = 0
        for j in range(n):
            acc = tower.top.add(acc, tower.top.mul(inv[k][j], encs[j]))
        out.append(Element(tower, "top", acc))
    return tuple(out)


def basis_det_b(tower, b):
    """Determinant certifying that 1, b^q + b, b^(q+1) spans F_{q^3} over F_q.

    Rows are the sigma-conjugates of that triple; the determinant is taken
    over the top field and always lands in F_q.  Only degree 3 towers
    qualify; b must be outside F_q.
    """
    if tower.n != 3:
        raise UnsupportedDegree("the spanning triple is specific to degree 3")
    enc = b.enc if isinstance(b, Element) else b
    if enc == 0:
        raise BZero("b must be nonzero")
    if enc < tower.q:
        raise BInBaseField("b must lie outside F_q")
    top = tower.top
    bq = tower.frob_enc(enc)
    row = [1, top.add(bq, enc), top.mul(bq, enc)]
    rows = [row]
    for _ in range(2):
        row = [tower.frob_enc(x) for x in row]
        rows.append(row)
    return Element(tower, "top", _linalg.det(top, rows))
