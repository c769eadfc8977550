"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from e8fold.exactfield import TowerScalar, ts_from_parts

small_fraction = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=6),
)

tower = st.lists(small_fraction, min_size=8, max_size=8).map(TowerScalar)

golden = st.builds(ts_from_parts, small_fraction, small_fraction)


def square_matrix(n, elements=golden):
    return st.lists(st.lists(elements, min_size=n, max_size=n).map(tuple), min_size=n, max_size=n).map(tuple)
