from __future__ import annotations

from hypothesis import strategies as st

from corpus import load_named
from simplicial import bit, clique_complex, from_maximal_faces, graph_from_edges

PENTAGON = load_named("pentagon")
RP2 = load_named("rp2_6")


@st.composite
def complexes(draw, min_m: int = 1, max_m: int = 6):
    """Closure of a random face list plus every singleton."""
    m = draw(st.integers(min_value=min_m, max_value=max_m))
    faces = draw(st.lists(st.integers(min_value=1, max_value=(1 << m) - 1), max_size=2 * m))
    return from_maximal_faces(m, faces + [bit(v) for v in range(1, m + 1)])


@st.composite
def graphs(draw, min_m: int = 1, max_m: int = 7):
    m = draw(st.integers(min_value=min_m, max_value=max_m))
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return graph_from_edges(m, chosen)


@st.composite
def flag_complexes(draw, min_m: int = 1, max_m: int = 6):
    return clique_complex(draw(graphs(min_m=min_m, max_m=max_m)))
