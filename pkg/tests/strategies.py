"""Hypothesis strategies for integer matrices, groups, Mackey functors, complexes and cubes."""
from hypothesis import strategies as st

from core import acceptance, fgab
from core.fgab import IntMatrix
from core.involutive_algebra import InvolutiveRing

seeded = st.randoms(use_true_random=False)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, bound=50):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=rows * cols, max_size=rows * cols))
    return IntMatrix(rows, cols, tuple(entries))


@st.composite
def composable_pairs(draw, max_dim=3, bound=4):
    """A p x q and a q x r matrix, shapes drawn independently so most pairs are not square."""
    p, q, r = (draw(st.integers(1, max_dim)) for _ in range(3))
    first = draw(st.lists(st.integers(-bound, bound), min_size=p * q, max_size=p * q))
    second = draw(st.lists(st.integers(-bound, bound), min_size=q * r, max_size=q * r))
    return IntMatrix(p, q, tuple(first)), IntMatrix(q, r, tuple(second))


@st.composite
def groups(draw, max_gens=3):
    n = draw(st.integers(1, max_gens))
    relations = draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), max_size=n))
    return fgab.group(n, relations or None)


@st.composite
def cyclic_rings(draw, max_order=12):
    """Z/n with n >= 2, or Z when n is drawn as 0."""
    n = draw(st.sampled_from([0] + list(range(2, max_order + 1))))
    name = "Z" if n == 0 else f"Z/{n}"
    return InvolutiveRing(name, fgab.cyclic(n), ["1"], [[(1,)]], (1,))


mackey_functors = seeded.map(acceptance.random_mackey)
complexes = seeded.map(acceptance.random_complex)
self_maps = seeded.map(lambda rng: acceptance.random_self_map(rng, acceptance.random_complex(rng)))
cube_diagrams = seeded.map(acceptance.random_cube)
