"""Shared test fixtures: small towers and element strategies."""

from hypothesis import strategies as st

from permrf import make_tower

# Towers small enough for exhaustive loops.
SMALL_TOWERS = (
    (2, 1, 2),
    (3, 1, 2),
    (2, 2, 2),
    (2, 1, 3),
    (3, 1, 3),
    (5, 1, 2),
)


def towers():
    return st.sampled_from(SMALL_TOWERS).map(lambda t: make_tower(*t))


@st.composite
def tower_and_elements(draw, count=1):
    tower = draw(towers())
    encs = [draw(st.integers(0, tower.size - 1)) for _ in range(count)]
    return (tower, *encs)


@st.composite
def tower_and_nonbase_b(draw):
    tower = draw(towers())
    b = draw(st.integers(tower.q, tower.size - 1))
    return tower, b


def prime_powers(limit):
    """All prime powers in [2, limit], ascending."""
    out = []
    for p in range(2, limit + 1):
        if all(p % f for f in range(2, int(p ** 0.5) + 1)):
            v = p
            while v <= limit:
                out.append(v)
                v *= p
    return sorted(out)
