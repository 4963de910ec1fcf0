"""Hypothesis strategies for integer matrices and small partial monoids."""

from hypothesis import strategies as st

import config
from monoid_library import SEED_TABLES, pruned_monoid

entries = st.integers(min_value=-9, max_value=9)
sparse_entries = st.one_of(st.just(0), entries)


@st.composite
def int_matrices(draw, max_rows: int = 12, max_cols: int = 12, square: bool = False):
    """Nonempty integer matrices as row lists, dense or mostly zero."""
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = rows if square else draw(st.integers(min_value=1, max_value=max_cols))
    entry = draw(st.sampled_from([entries, sparse_entries]))
    row = st.lists(entry, min_size=cols, max_size=cols)
    return draw(st.lists(row, min_size=rows, max_size=rows))


@st.composite
def partial_monoids(draw, max_size: int = config.RANDOM_MONOID_MAX_SIZE):
    """
    A cyclic, capped, max or arbitrary table on at most max_size elements,
    thinned pair by pair and pruned until it validates.
    """
    size = draw(st.integers(min_value=1, max_value=max_size))
    kind = draw(st.sampled_from(sorted(SEED_TABLES) + ["arbitrary"]))
    thin = draw(st.booleans())
    sums = {}
    for i in range(1, size):
        for j in range(i, size):
            if thin and not draw(st.booleans()):
                continue
            if kind == "arbitrary":
                sums[(i, j)] = draw(st.integers(min_value=0, max_value=size - 1))
            else:
                sums[(i, j)] = SEED_TABLES[kind](i, j, size)
    return pruned_monoid(size, sums, name=f"{kind}({size})")
