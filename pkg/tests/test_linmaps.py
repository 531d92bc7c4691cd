"""Linearized polynomials: evaluation, matrices, rank data, and the
trace decomposition.  Frozen values verified against an independent
implementation.
"""

import random

import pytest
from hypothesis import given, strategies as st

from helpers import SMALL_TOWERS
from permrf import (
    LinearizedPoly,
    compose,
    eval_lin,
    from_matrix,
    invert_lin,
    make_tower,
    matrix_of,
    rank_kernel_image,
    trace_decompose,
)
from permrf.errors import NotBijective, OutOfRange
from permrf.linmaps import complete_basis


def test_constructors_and_identity():
    t = make_tower(3, 1, 2)
    ident = LinearizedPoly.identity(t)
    assert ident.coeffs == (1, 0)
    assert ident.is_identity
    assert LinearizedPoly.zero(t).coeffs == (0, 0)
    assert LinearizedPoly.scaling(t, 5).coeffs == (5, 0)
    assert LinearizedPoly.frobenius_power(t, 1).coeffs == (0, 1)


def test_exponent_folding():
    t = make_tower(3, 1, 2)
    # x^(q^2) is x, so a coefficient at slot 2 folds onto slot 0
    folded = LinearizedPoly(t, (0, 0, 1))
    assert folded.coeffs == (1, 0)
    assert folded.is_identity
    # folding adds coefficients in the field: 2 + 1 = 0 in F_3
    doubled = LinearizedPoly(t, (1, 2, 1, 1))
    assert doubled.coeffs == (2, 0)


def test_coefficient_validation():
    t = make_tower(3, 1, 2)
    with pytest.raises(OutOfRange):
        LinearizedPoly(t, (9, 0))
    with pytest.raises(OutOfRange):
        LinearizedPoly(t, (-1, 0))


def test_eval_matches_explicit_powers():
    for params in SMALL_TOWERS:
        t = make_tower(*params)
        top = t.ops("top")
        rng = random.Random(f"linmaps-eval:{params}")
        for _ in range(8):
            coeffs = tuple(rng.randrange(t.size) for _ in range(t.n))
            L = LinearizedPoly(t, coeffs)
            for x in t.elements("top"):
                want = 0
                for i, a in enumerate(coeffs):
                    want = top.add(want, top.mul(a, top.pow(x, t.q ** i)))
                assert L.eval_enc(x) == want


def test_call_accepts_elements_and_encodings():
    t = make_tower(3, 1, 2)
    L = LinearizedPoly(t, (0, 1))
    out = L(t.element("top", 3))
    assert out.enc == 6
    assert eval_lin(L, 3) == 6


def test_matrix_round_trip():
    for params in SMALL_TOWERS:
        t = make_tower(*params)
        rng = random.Random(f"linmaps-matrix:{params}")
        for _ in range(6):
            coeffs = tuple(rng.randrange(t.size) for _ in range(t.n))
            L = LinearizedPoly(t, coeffs)
            back = from_matrix(t, matrix_of(L))
            assert back.coeffs == L.coeffs


def test_matrix_of_identity():
    t = make_tower(2, 2, 2)
    assert matrix_of(LinearizedPoly.identity(t)) == [[1, 0], [0, 1]]


def test_compose_matches_pointwise():
    t = make_tower(3, 1, 2)
    rng = random.Random("linmaps-compose")
    for _ in range(10):
        f = LinearizedPoly(t, tuple(rng.randrange(9) for _ in range(2)))
        g = LinearizedPoly(t, tuple(rng.randrange(9) for _ in range(2)))
        fg = compose(f, g)
        for x in t.elements("top"):
            assert fg.eval_enc(x) == f.eval_enc(g.eval_enc(x))


def test_rank_kernel_image_frozen():
    t = make_tower(3, 1, 2)
    # x^q - x: kernel basis spans F_3, image basis spans the
    # zero-trace line {0, 3, 6}
    L = LinearizedPoly(t, (2, 1))
    rank, kernel, image = rank_kernel_image(L)
    assert rank == 1
    assert kernel == [1]
    assert image == [3]
    assert all(t.trace_enc(a) == 0 for a in image)


def test_rank_nullity():
    for params in SMALL_TOWERS:
        t = make_tower(*params)
        rng = random.Random(f"linmaps-rank:{params}")
        for _ in range(8):
            L = LinearizedPoly(t, tuple(rng.randrange(t.size)
                                        for _ in range(t.n)))
            rank, kernel, image = rank_kernel_image(L)
            assert rank + len(kernel) == t.n
            assert len(image) == rank
            outputs = {L.eval_enc(x) for x in t.elements("top")}
            assert len(outputs) == t.q ** rank
            assert set(image) <= outputs
            assert all(L.eval_enc(k) == 0 for k in kernel)


def test_invert_lin():
    t = make_tower(2, 1, 3)
    L = LinearizedPoly.frobenius_power(t, 1)
    inv = invert_lin(L)
    comp = compose(inv, L)
    assert comp.is_identity
    with pytest.raises(NotBijective):
        invert_lin(LinearizedPoly(t, (1, 1, 0)))


def test_complete_basis():
    t = make_tower(2, 1, 3)
    full = complete_basis(t, [3])
    assert len(full) == 3
    rank, _, _ = rank_kernel_image(
        from_matrix(t, tuple(zip(*[t.ops("top").digits(v, t.n)
                                   for v in full]))))
    assert rank == 3
    assert full[0] == 3


def test_trace_decompose_frozen_f4():
    t = make_tower(2, 1, 2)
    ident = trace_decompose(LinearizedPoly.identity(t))
    assert [(a.enc, b.enc) for a, b in ident] == [(1, 3), (2, 1)]
    # (u+1) Tr(x) written as a linearized polynomial
    scaled_trace = trace_decompose(LinearizedPoly(t, (3, 3)))
    assert [(a.enc, b.enc) for a, b in scaled_trace] == [(3, 1)]


def test_trace_decompose_reconstructs():
    for params in ((2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)):
        t = make_tower(*params)
        top = t.ops("top")
        rng = random.Random(f"linmaps-decompose:{params}")
        for _ in range(8):
            L = LinearizedPoly(t, tuple(rng.randrange(t.size)
                                        for _ in range(t.n)))
            pairs = trace_decompose(L)
            rank, _, _ = rank_kernel_image(L)
            assert len(pairs) == rank
            for x in t.elements("top"):
                acc = 0
                for alpha, beta in pairs:
                    term = top.mul(alpha.enc,
                                   t.trace_enc(top.mul(beta.enc, x)))
                    acc = top.add(acc, term)
                assert acc == L.eval_enc(x)


def test_pretty():
    t = make_tower(3, 1, 2)
    assert "x" in LinearizedPoly(t, (1, 2)).pretty()
    assert LinearizedPoly.zero(t).pretty() == "0"
