import pytest

from shardlab.engine.errors import ArrangementFileError, BasePointOnHyperplane, DimensionMismatch, NonSimplicialRegion
from shardlab.engine.exactgeom import (ABOVE, BELOW, ON, QQ_FIELD, Cone, Hyperplane, ScalarField, Subspace,
                                       full_subarrangement, ingest_arrangement, linear_rank, load_arrangement,
                                       side_of)

A2_NORMALS = [(1, -1, 0), (0, 1, -1), (1, 0, -1)]


def test_rational_scalars_are_exact():
    f = QQ_FIELD
    assert f.convert("3/4") + f.convert("1/4") == f.one
    assert f.sign(f.convert("-1/3")) == -1
    assert f.sign(f.zero) == 0


def test_quadratic_field_signs():
    f = ScalarField(5)
    golden = f.convert("(1 + sqrt(5))/2")
    assert f.sign(golden - f.convert(1)) == 1
    assert f.sign(f.convert("sqrt(5) - 3")) == -1
    assert golden * golden == golden + f.one


def test_side_of_hyperplane():
    h = Hyperplane(QQ_FIELD.vector([1, -1]), 0)
    base = QQ_FIELD.vector([2, 1])
    assert side_of(QQ_FIELD.vector([5, 0]), h, base) == BELOW
    assert side_of(QQ_FIELD.vector([0, 5]), h, base) == ABOVE
    assert side_of(QQ_FIELD.vector([3, 3]), h, base) == ON
    with pytest.raises(BasePointOnHyperplane):
        side_of(QQ_FIELD.vector([1, 0]), h, QQ_FIELD.vector([1, 1]))
    with pytest.raises(DimensionMismatch):
        side_of(QQ_FIELD.vector([1, 0, 0]), h, base)


def test_linear_rank():
    vectors = [QQ_FIELD.vector(v) for v in A2_NORMALS]
    assert linear_rank(vectors) == 2
    assert linear_rank([]) == 0


def test_subspace_from_equations():
    plane = Subspace.from_equations(QQ_FIELD, 3, [QQ_FIELD.vector([1, 1, 1])])
    assert plane.dim == 2
    assert plane.codim == 1
    assert plane.contains_vector(QQ_FIELD.vector([1, -1, 0]))
    assert not plane.contains_vector(QQ_FIELD.vector([1, 0, 0]))


def test_orthant_cone_faces():
    f = QQ_FIELD
    cone = Cone(f, 2, inequalities=[f.vector([1, 0]), f.vector([0, 1])])
    assert cone.dim == 2
    assert len(cone.rays) == 2
    assert len(cone.faces()) == 4
    assert cone.is_eulerian()
    assert cone.contains_point(f.vector([3, 0]))
    assert not cone.contains_point(f.vector([-1, 1]))


def test_cone_intersection_and_containment():
    f = QQ_FIELD
    half = Cone(f, 2, inequalities=[f.vector([1, 0])])
    quadrant = half.intersect(Cone(f, 2, inequalities=[f.vector([0, 1])]))
    assert half.contains(quadrant)
    assert not quadrant.contains(half)
    assert half.lineality_space().dim == 1
    line = Cone(f, 2, equalities=[f.vector([1, -1])])
    assert line.dim == 1
    assert line.codim == 1


def test_ingest_a2_arrangement():
    arrangement = ingest_arrangement(A2_NORMALS, [3, 2, 1])
    assert arrangement.dim == 2
    assert arrangement.size == 6
    assert arrangement.region_count_by_flats() == 6
    assert len(arrangement.basic_hyperplanes) == 2


def test_ingest_drops_repeated_hyperplanes():
    arrangement = ingest_arrangement(A2_NORMALS + [(2, -2, 0)], [3, 2, 1])
    assert arrangement.hyperplane_count == 3
    assert arrangement.size == 6


def test_ingest_rejects_base_point_on_hyperplane():
    with pytest.raises(BasePointOnHyperplane):
        ingest_arrangement(A2_NORMALS, [1, 1, 0])


def test_ingest_rejects_mismatched_dimensions():
    with pytest.raises(DimensionMismatch):
        ingest_arrangement([(1, 0), (0, 1, 0)], [1, 2])


def test_non_simplicial_region_is_reported():
    normals = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    with pytest.raises(NonSimplicialRegion):
        ingest_arrangement(normals, [1, 2, 4]).regions


def test_full_subarrangement_of_a_line():
    arrangement = ingest_arrangement(A2_NORMALS, [3, 2, 1])
    line = Subspace.from_equations(QQ_FIELD, 2, [arrangement.hyperplanes[0].normal])
    sub = full_subarrangement(arrangement, line)
    assert sub.hyperplane_count == 1
    assert sub.size == 2


def test_load_arrangement_file(tmp_path):
    source = tmp_path / "a2.txt"
    source.write_text("# base point\n3 2 1\n\n1 -1 0  # first normal\n0 1 -1\n2/3 0 -2/3\n")
    arrangement = load_arrangement(str(source))
    assert arrangement.hyperplane_count == 3
    assert arrangement.size == 6


@pytest.mark.parametrize("text, message", [("", "no base point"), ("3 2 1\n", "no hyperplanes"),
                                           ("3 2 1\n1 -1 0.5.1\n", "entries must be rationals")])
def test_load_arrangement_rejects_malformed_files(tmp_path, text, message):
    source = tmp_path / "bad.txt"
    source.write_text(text)
    with pytest.raises(ArrangementFileError, match=message):
        load_arrangement(str(source))
