from __future__ import annotations

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from conftest import PENTAGON, complexes, graphs
from corpus import disjoint_points, load_named, path, polygon, simplex_boundary
from errors import HypothesisRefused
from simplicial import (
    GhostVertexWarning,
    clique_complex,
    compress_mask,
    connected_components,
    dehn_sommerville_check,
    fh_vector,
    from_facet_lists,
    from_maximal_faces,
    full_mask,
    full_subcomplex,
    graph_from_edges,
    is_cycle,
    is_face,
    is_flag,
    join,
    members,
    missing_faces,
    one_skeleton,
    require_flag,
    subsets_of,
    vertex_deletion,
    vertex_set,
)


class TestConstruction:
    def test_ghost_vertex_is_promoted(self):
        with pytest.warns(GhostVertexWarning):
            K = from_facet_lists(4, [[1, 2, 3], [1, 2], [3]])
        assert K.maximal_faces == (7, 8)

    def test_label_out_of_range(self):
        with pytest.raises(ValueError):
            from_facet_lists(3, [[1, 4]])

    def test_needs_a_vertex(self):
        with pytest.raises(ValueError):
            from_maximal_faces(0, [])

    def test_faces_include_empty_set(self):
        assert PENTAGON.faces[0] == 0
        assert len(PENTAGON.faces) == 1 + 5 + 5
        assert PENTAGON.dim == 1

    def test_subsets_ascending(self):
        assert list(subsets_of(0b101)) == [0, 1, 4, 5]

    @given(complexes())
    def test_faces_closed_under_subsets(self, K):
        faces = set(K.faces)
        for face in K.faces:
            assert all(sub in faces for sub in subsets_of(face))
        assert all(is_face(K, face) for face in K.faces)


class TestMissingFaces:
    def test_pentagon(self):
        assert missing_faces(PENTAGON) == [5, 9, 10, 18, 20]
        assert is_flag(PENTAGON)

    def test_triangle_boundary_is_not_flag(self):
        K = load_named("triangle_boundary")
        assert missing_faces(K) == [7]
        assert not is_flag(K)
        with pytest.raises(HypothesisRefused):
            require_flag(K, operation="test")

    @given(complexes())
    def test_missing_faces_are_minimal(self, K):
        for mf in missing_faces(K):
            assert not is_face(K, mf)
            assert all(is_face(K, mf & ~(1 << (v - 1))) for v in members(mf))

    @given(complexes())
    def test_flag_iff_clique_complex_of_skeleton(self, K):
        assert is_flag(K) == (clique_complex(one_skeleton(K)) == K)


class TestRestriction:
    def test_full_subcomplex_relabels(self):
        K_I, labels = full_subcomplex(PENTAGON, vertex_set([1, 3, 5]))
        assert K_I.maximal_faces == (2, 5)
        assert labels == (1, 3, 5)

    def test_empty_restriction_is_void(self):
        K_I, labels = full_subcomplex(PENTAGON, 0)
        assert K_I.is_void and labels == ()

    def test_vertex_deletion_of_pentagon_is_a_path(self):
        K = vertex_deletion(PENTAGON, 3)
        assert K.m == 4
        assert K.maximal_faces == (3, 9, 12)
        assert not is_cycle(K)

    def test_deletion_out_of_range(self):
        with pytest.raises(ValueError):
            vertex_deletion(PENTAGON, 6)

    @given(complexes(), st.data())
    def test_restriction_composes(self, K, data):
        J = data.draw(st.integers(min_value=0, max_value=full_mask(K.m)))
        I = data.draw(st.integers(min_value=0, max_value=J)) & J
        outer, outer_labels = full_subcomplex(K, J)
        inner, inner_labels = full_subcomplex(outer, compress_mask(I, outer_labels))
        direct, direct_labels = full_subcomplex(K, I)
        assert inner == direct
        assert tuple(outer_labels[k - 1] for k in inner_labels) == direct_labels


class TestGraphs:
    def test_clique_complex_of_triangle(self):
        K = clique_complex(graph_from_edges(3, [(1, 2), (2, 3), (1, 3)]))
        assert K.maximal_faces == (7,)

    def test_clique_complex_of_square(self):
        K = clique_complex(graph_from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]))
        assert K == polygon(4)

    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            graph_from_edges(3, [(2, 2)])

    @given(graphs())
    def test_skeleton_of_clique_complex(self, g):
        assert one_skeleton(clique_complex(g)) == g


class TestInvariants:
    def test_fh_pentagon(self):
        fh = fh_vector(PENTAGON)
        assert fh.f == (5, 5)
        assert fh.h == (1, 3, 1)
        assert dehn_sommerville_check(PENTAGON)

    def test_fh_octahedron(self):
        fh = fh_vector(load_named("octahedron"))
        assert fh.f == (6, 12, 8)
        assert fh.h == (1, 3, 3, 1)

    def test_fh_simplex_boundary(self):
        K = simplex_boundary(4)
        assert fh_vector(K).f == (4, 6, 4)
        assert fh_vector(K).h == (1, 1, 1, 1)
        assert dehn_sommerville_check(K)

    def test_path_is_not_symmetric(self):
        assert fh_vector(path(3)).h == (1, 1, 0)
        assert not dehn_sommerville_check(path(3))

    @given(complexes())
    def test_h_sums_to_top_face_count(self, K):
        fh = fh_vector(K)
        assert sum(fh.h) == fh.f[-1]

    def test_components(self):
        assert connected_components(disjoint_points(3)) == [1, 2, 4]
        assert connected_components(PENTAGON) == [31]
        assert connected_components(PENTAGON, within=vertex_set([1, 3, 4])) == [1, 12]

    @pytest.mark.parametrize("m", [4, 5, 6, 7])
    def test_polygons_are_cycles(self, m):
        assert is_cycle(polygon(m))

    def test_not_cycles(self):
        assert not is_cycle(load_named("triangle_boundary"))
        assert not is_cycle(load_named("octahedron"))
        assert not is_cycle(path(5))
        assert not is_cycle(join(disjoint_points(1), polygon(4)))

    def test_join_of_point_pairs_is_square(self):
        square = join(disjoint_points(2), disjoint_points(2))
        assert square == from_facet_lists(4, [[1, 3], [1, 4], [2, 3], [2, 4]])
        assert is_cycle(square)

    @hsettings(max_examples=30)
    @given(complexes(max_m=4), complexes(max_m=4))
    def test_join_face_counts(self, K1, K2):
        assert len(join(K1, K2).faces) == len(K1.faces) * len(K2.faces)

    @hsettings(max_examples=20)
    @given(complexes(max_m=3), complexes(max_m=3), complexes(max_m=3))
    def test_join_is_associative(self, K1, K2, K3):
        assert join(join(K1, K2), K3) == join(K1, join(K2, K3))

    @given(complexes())
    def test_complex_is_determined_by_missing_faces(self, K):
        missing = missing_faces(K)
        rebuilt = [I for I in subsets_of((1 << K.m) - 1) if not any(M & I == M for M in missing)]
        assert sorted(rebuilt) == sorted(K.faces)
