"""Complex validation, the text format, homology, and spur collapses."""

import random

import pytest

from zncomplex.errors import ScxFormatError, SpurError
from zncomplex.simplicial import (
    Homology,
    SimplicialComplex,
    are_compatible,
    collapse_spur,
    dumps_scx,
    euler_characteristic,
    from_maximal_faces,
    homology,
    homology_through,
    is_spur,
    loads_scx,
    maximal_faces,
    validate,
)


def circle(n):
    return from_maximal_faces([(i, (i + 1) % n) for i in range(n)])


def test_validate_empty_complex():
    assert validate(SimplicialComplex(frozenset(), 0))


def test_validate_missing_subset():
    broken = SimplicialComplex(
        frozenset({(0, 1, 2), (0, 2), (1, 2), (0,), (1,), (2,)}), 3)
    report = validate(broken)
    assert not report
    assert any("missing subset (0, 1)" in v for v in report.violations)


def test_validate_vertex_coverage_and_labels():
    report = validate(SimplicialComplex(frozenset({(0,)}), 2))
    assert any("vertex 1" in v for v in report.violations)
    report = validate(SimplicialComplex(frozenset({(1, 0)}), 2))
    assert any("not strictly increasing" in v for v in report.violations)


def test_closure_constructor():
    complex_ = from_maximal_faces([(0, 1, 2)])
    assert validate(complex_)
    assert len(complex_.faces) == 7


def random_complex(rng):
    n = rng.randint(1, 7)
    faces = [tuple(sorted(rng.sample(range(n), rng.randint(1, min(3, n)))))
             for _ in range(rng.randint(1, 9))]
    used = sorted({v for f in faces for v in f})
    relabel = {v: i for i, v in enumerate(used)}
    return from_maximal_faces(
        [tuple(relabel[v] for v in f) for f in faces], vertex_count=len(used))


def test_random_closures_validate():
    rng = random.Random(5)
    for _ in range(30):
        complex_ = random_complex(rng)
        assert validate(complex_), validate(complex_).violations


def test_euler_characteristic():
    point = from_maximal_faces([(0,)])
    assert euler_characteristic(point) == 1
    assert euler_characteristic(circle(3)) == 0
    sphere = from_maximal_faces(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert euler_characteristic(sphere) == 2


def test_homology_circle():
    assert homology(circle(3), 1) == Homology(1)
    assert homology(circle(3), 0) == Homology(1)
    assert homology(circle(3), 2) == Homology(0)


def test_homology_sphere_and_disk():
    sphere = from_maximal_faces(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert homology_through(sphere, 2) == [Homology(1), Homology(0), Homology(1)]
    disk = from_maximal_faces([(0, 1, 2)])
    assert homology_through(disk, 2) == [Homology(1), Homology(0), Homology(0)]


def test_homology_projective_plane_torsion():
    # Minimal 6-vertex triangulation of the real projective plane
    # (antipodal quotient of the icosahedron): 10 triangles on K_6.
    faces = [(0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 4, 5),
             (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 3, 4), (3, 4, 5)]
    rp2 = from_maximal_faces(faces)
    assert euler_characteristic(rp2) == 1
    assert homology(rp2, 1) == Homology(0, (2,))
    assert homology(rp2, 2) == Homology(0)


def test_homology_euler_consistency_random():
    rng = random.Random(11)
    for _ in range(20):
        complex_ = random_complex(rng)
        hs = homology_through(complex_, complex_.dim)
        alt = sum((-1) ** k * h.betti for k, h in enumerate(hs))
        assert alt == euler_characteristic(complex_)


def test_scx_round_trip():
    complex_ = from_maximal_faces([(0, 1, 2), (2, 3), (3,)], vertex_count=4)
    text = dumps_scx(complex_)
    assert text.startswith("scx 1\nv 4\n")
    again = loads_scx(text)
    assert again == complex_
    assert dumps_scx(again) == text  # bit-exact


def test_scx_rejects_garbage():
    with pytest.raises(ScxFormatError):
        loads_scx("hello\n")
    with pytest.raises(ScxFormatError):
        loads_scx("scx 1\nv x\n")
    with pytest.raises(ScxFormatError):
        loads_scx("scx 1\nv 3\n2 1\n")


def test_maximal_faces():
    complex_ = from_maximal_faces([(0, 1, 2), (2, 3)])
    assert maximal_faces(complex_) == [(0, 1, 2), (2, 3)]


def test_is_spur_singleton():
    complex_ = from_maximal_faces([(0, 1), (0, 2), (1, 2)])
    assert is_spur(complex_, 0, {1})
    assert is_spur(complex_, 0, set())  # vacuous


def test_is_spur_violations():
    complex_ = from_maximal_faces([(0, 1), (0, 2), (1, 2)])
    report = is_spur(complex_, 0, {1, 2})
    assert not report
    assert any("adjacent" in v for v in report.violations)
    # common neighbor besides the base
    complex2 = from_maximal_faces([(0, 1), (0, 2), (1, 3), (2, 3)])
    report2 = is_spur(complex2, 0, {1, 2})
    assert not report2
    assert any("share neighbor 3" in v for v in report2.violations)
    with pytest.raises(ValueError):
        is_spur(complex_, 0, {9})


def test_are_compatible():
    # Two disjoint spurs with no cross edges.
    complex_ = from_maximal_faces([(0, 1), (0, 2), (0, 3), (0, 4)])
    assert are_compatible(complex_, 0, {1, 2}, {3, 4})
    assert not are_compatible(complex_, 0, {1, 2}, {2, 3})  # overlap
    # two cross edges break compatibility
    complex2 = from_maximal_faces([(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (2, 4)])
    assert not are_compatible(complex2, 0, {1, 2}, {3, 4})
    with pytest.raises(SpurError):
        are_compatible(from_maximal_faces([(0, 1), (1, 2), (0, 2)]),
                       0, {1, 2}, {1})


def test_collapse_singleton_is_relabel():
    complex_ = from_maximal_faces([(0, 1), (1, 2), (0, 2)])
    out, mapping = collapse_spur(complex_, 0, {1})
    assert out.vertex_count == 3
    assert sorted(mapping) == [0, 1, 2]
    assert homology_through(out, 2) == homology_through(complex_, 2)


def test_collapse_pair():
    # Base 0 adjacent to 1 and 2; no other shared structure.
    complex_ = from_maximal_faces([(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])
    out, mapping = collapse_spur(complex_, 0, {1, 2})
    assert out.vertex_count == complex_.vertex_count - 1
    assert mapping[1] == mapping[2]
    assert validate(out)
    assert homology_through(out, 2) == homology_through(complex_, 2)


def test_collapse_empty_spur_adds_pendant():
    complex_ = from_maximal_faces([(0, 1), (1, 2), (0, 2)])
    out, mapping = collapse_spur(complex_, 0, set())
    assert out.vertex_count == 4
    assert (0, 3) in out.faces
    assert mapping == {0: 0, 1: 1, 2: 2}
    assert homology_through(out, 2) == homology_through(complex_, 2)


def test_collapse_requires_spur():
    complex_ = from_maximal_faces([(0, 1), (1, 2), (0, 2)])
    with pytest.raises(SpurError):
        collapse_spur(complex_, 0, {1, 2})
