from fractions import Fraction

from hypothesis import strategies as st

small_fractions = st.builds(
    Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4)
)
sigmas = st.sampled_from((-1, 0, 1))
