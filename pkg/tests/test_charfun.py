import pytest

from toruscalc.charfun import (
    CharacteristicFunction,
    CharFunError,
    TorusManifoldDescriptor,
    characteristic_submanifolds,
    fixed_point_count,
    merge_characteristic,
    standard_orbit_charfun,
    validate_characteristic,
)
from toruscalc.polytope import SurgerySpec, orbit_space_lattice, simplex_lattice


def identity_spec(P, left_face, right_face):
    return SurgerySpec.make(left_face, right_face, {f: f for f in P.faces[left_face].facets})


def test_standard_orbit_charfun_validates():
    for n in range(1, 9):
        q = orbit_space_lattice(n)
        report = validate_characteristic(q, standard_orbit_charfun(n))
        assert report.ok, (n, report.violations)


def test_simplex_charfun_ok():
    t = simplex_lattice(2)
    xi = CharacteristicFunction.make(2, {0: (1, 0), 1: (0, 1), 2: (-1, -1)})
    assert validate_characteristic(t, xi).ok


def test_simplex_charfun_violation_located():
    t = simplex_lattice(2)
    xi = CharacteristicFunction.make(2, {0: (1, 0), 1: (0, 1), 2: (1, 2)})
    report = validate_characteristic(t, xi)
    assert not report.ok
    # the failure is the vertex on facets 0 and 2: det(e1, e1+2e2) = 2
    bad = {frozenset(t.faces[i].facets) for i in report.violations}
    assert bad == {frozenset({0, 2})}


def test_rejects_imprimitive_vector():
    with pytest.raises(CharFunError):
        CharacteristicFunction.make(2, {0: (2, 0), 1: (0, 1)})


def test_rejects_wrong_length():
    with pytest.raises(CharFunError):
        CharacteristicFunction.make(3, {0: (1, 0)})


def test_validation_is_gl_invariant():
    # Applying one unimodular change to every vector cannot change the verdict.
    t = simplex_lattice(2)
    good = CharacteristicFunction.make(2, {0: (1, 0), 1: (0, 1), 2: (-1, -1)})
    bad = CharacteristicFunction.make(2, {0: (1, 0), 1: (0, 1), 2: (1, 2)})
    mats = [((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1))]

    def apply(m, xi):
        moved = {
            fid: tuple(sum(m[i][j] * v[j] for j in range(2)) for i in range(2))
            for fid, v in xi.assignment
        }
        return CharacteristicFunction.make(2, moved)

    for m in mats:
        assert validate_characteristic(t, apply(m, good)).ok
        assert not validate_characteristic(t, apply(m, bad)).ok


def test_merge_along_2face_keeps_standard_vectors():
    q = orbit_space_lattice(3)
    xi = standard_orbit_charfun(3)
    f = q.face_by([0])
    lattice, merged = merge_characteristic(q, xi, q, xi, identity_spec(q, f, f))
    assert validate_characteristic(lattice, merged).ok
    # the merged facet keeps e1 (facet 0 paired with facet 0)
    assert merged.vector(0) == (1, 0, 0)


def test_merge_interior_has_no_constraints():
    q = orbit_space_lattice(3)
    xi = standard_orbit_charfun(3)
    top = q.top_face_id()
    lattice, merged = merge_characteristic(q, xi, q, xi, identity_spec(q, top, top))
    assert lattice.holes == 1
    assert len(merged.as_dict()) == 6


def test_merge_rejects_mismatched_vectors():
    q = orbit_space_lattice(2)
    xi1 = standard_orbit_charfun(2)
    xi2 = CharacteristicFunction.make(2, {0: (0, 1), 1: (1, 0)})
    e = q.face_by([0])
    with pytest.raises(CharFunError):
        merge_characteristic(q, xi1, q, xi2, identity_spec(q, e, e))


def test_merge_grid_q3_q4_all_validate():
    for n in (3, 4):
        q = orbit_space_lattice(n)
        xi = standard_orbit_charfun(n)
        for k in range(1, n + 1):
            fid = q.top_face_id() if k == n else q.face_by(range(n - k))
            lattice, merged = merge_characteristic(q, xi, q, xi, identity_spec(q, fid, fid))
            assert validate_characteristic(lattice, merged).ok


def test_descriptor_fixed_points():
    for n in (2, 3, 4):
        q = orbit_space_lattice(n)
        d = TorusManifoldDescriptor.make(q, standard_orbit_charfun(n))
        assert fixed_point_count(d) == 2
    t = simplex_lattice(2)
    d = TorusManifoldDescriptor.make(
        t, CharacteristicFunction.make(2, {0: (1, 0), 1: (0, 1), 2: (-1, -1)})
    )
    assert fixed_point_count(d) == 3


def test_surgered_descriptor_has_four_fixed_points():
    q = orbit_space_lattice(3)
    xi = standard_orbit_charfun(3)
    f = q.face_by([0])
    lattice, merged = merge_characteristic(q, xi, q, xi, identity_spec(q, f, f))
    d = TorusManifoldDescriptor.make(lattice, merged)
    assert fixed_point_count(d) == 4


def test_characteristic_submanifolds_listing():
    q = orbit_space_lattice(3)
    d = TorusManifoldDescriptor.make(q, standard_orbit_charfun(3))
    subs = characteristic_submanifolds(d)
    assert subs == [(0, (1, 0, 0)), (1, (0, 1, 0)), (2, (0, 0, 1))]
    # a merged lattice lists each merged facet exactly once
    f = q.face_by([0])
    lattice, merged = merge_characteristic(
        q, standard_orbit_charfun(3), q, standard_orbit_charfun(3), identity_spec(q, f, f)
    )
    d2 = TorusManifoldDescriptor.make(lattice, merged)
    assert len(characteristic_submanifolds(d2)) == len(lattice.facet_ids) == 5


def test_iterated_merge_three_summands():
    q = orbit_space_lattice(3)
    xi = standard_orbit_charfun(3)
    f = q.face_by([0])
    lattice, merged = merge_characteristic(q, xi, q, xi, identity_spec(q, f, f))
    # glue a third copy along a surviving 2-face carrying e2
    target = next(
        i
        for i, face in enumerate(lattice.faces)
        if face.dim == 2 and merged.vector(next(iter(face.facets))) == (0, 1, 0)
    )
    spec = SurgerySpec.make(target, q.face_by([1]), {next(iter(lattice.faces[target].facets)): 1})
    final, xi3 = merge_characteristic(lattice, merged, q, xi, spec)
    assert validate_characteristic(final, xi3).ok
    assert TorusManifoldDescriptor.make(final, xi3).lattice.vertex_count() == 6


def test_charfun_json_round_trip():
    xi = standard_orbit_charfun(3)
    assert CharacteristicFunction.from_json(xi.to_json()) == xi
