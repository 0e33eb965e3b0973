"""Face lattices of simple polytopes and nice manifolds with corners.

A face is identified by the set of facets it lies in together with a
component tag, because the intersection of a facet collection may be
disconnected (the orbit space of the even sphere has two vertices on the same
facet set).  Containment between faces is stored explicitly; it is the minimal
extra structure that survives surgery.

Three surgeries are provided: connected sum at vertices of simple polytopes,
connected sum along the interior point of a proper face (facets containing
the chosen faces merge pairwise), and interior connected sum (a simple hole;
only the hole counter and the disjoint union of faces change).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .betti import BettiVector


@dataclass(frozen=True)
class Face:
    dim: int
    facets: frozenset[int]
    component: int

    def key(self) -> tuple[int, tuple[int, ...], int]:
        return (self.dim, tuple(sorted(self.facets)), self.component)


@dataclass(frozen=True)
class SurgerySpec:
    """Where to glue: one face on each side and a bijection of their facets."""

    left_face_id: int
    right_face_id: int
    facet_pairing: tuple[tuple[int, int], ...]

    @staticmethod
    def make(left_face_id: int, right_face_id: int, pairing: Mapping[int, int]) -> "SurgerySpec":
        return SurgerySpec(left_face_id, right_face_id, tuple(sorted(pairing.items())))

    def pairing_dict(self) -> dict[int, int]:
        return dict(self.facet_pairing)


class LatticeError(ValueError):
    pass


class FaceLattice:
    """Graded poset of faces, with facet incidence and explicit containment.

    ``faces[i]`` lists (dim, facet set, component); ``contains[i]`` is the set
    of face ids weakly below face i (its closed cell's faces, including i).
    Ids are canonical: faces are sorted by (dim, sorted facet set, component).
    """

    def __init__(
        self,
        ambient_dim: int,
        facet_ids: Sequence[int],
        faces: Sequence[tuple[int, frozenset[int], object]],
        contains: Mapping[int, set[int]],
        holes: int = 0,
    ):
        # ``faces`` comes in with provenance tags as third entry; canonical
        # component numbers are assigned per (dim, facet set) group in tag
        # order, and ids by the canonical sort.
        self.ambient_dim = ambient_dim
        self.facet_ids = tuple(sorted(facet_ids))
        self.holes = holes
        groups: dict[tuple[int, tuple[int, ...]], list[int]] = {}
        for idx, (dim, facets, tag) in enumerate(faces):
            groups.setdefault((dim, tuple(sorted(facets))), []).append(idx)
        component: dict[int, int] = {}
        for key in sorted(groups):
            members = sorted(groups[key], key=lambda i: _tag_key(faces[i][2]))
            for c, idx in enumerate(members):
                component[idx] = c
        canon = sorted(
            range(len(faces)),
            key=lambda i: (faces[i][0], tuple(sorted(faces[i][1])), component[i]),
        )
        old_to_new = {old: new for new, old in enumerate(canon)}
        self.faces: tuple[Face, ...] = tuple(
            Face(faces[old][0], frozenset(faces[old][1]), component[old]) for old in canon
        )
        self.contains: tuple[frozenset[int], ...] = tuple(
            frozenset(old_to_new[j] for j in contains[old]) for old in canon
        )
        self._validate_basic()

    # -- construction helpers ------------------------------------------------

    def _validate_basic(self) -> None:
        n = self.ambient_dim
        ids = set(self.facet_ids)
        seen = set()
        for i, f in enumerate(self.faces):
            if not f.facets <= ids:
                raise LatticeError("face references unknown facet")
            if not 0 <= f.dim <= n:
                raise LatticeError("face dimension out of range")
            if f.key() in seen:
                raise LatticeError("duplicate face key")
            seen.add(f.key())
            if i not in self.contains[i]:
                raise LatticeError("containment must be reflexive")
            for j in self.contains[i]:
                if j != i and not self.faces[j].facets > f.facets:
                    raise LatticeError("containment must refine facet-set reverse inclusion")

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.faces) if f.dim == 0)

    def vertex_count(self) -> int:
        return len(self.vertex_ids)

    def facet_components(self, facet_id: int) -> tuple[int, ...]:
        return tuple(
            i for i, f in enumerate(self.faces) if f.dim == self.ambient_dim - 1 and f.facets == {facet_id}
        )

    def face_by(self, facets: Iterable[int], component: int = 0) -> int:
        key = frozenset(facets)
        for i, f in enumerate(self.faces):
            if f.facets == key and f.component == component:
                return i
        raise LatticeError(f"no face with facets {sorted(key)} component {component}")

    def faces_above(self, face_id: int) -> list[int]:
        """Ids of faces whose closure contains the given face (incl. itself)."""
        return [i for i in range(len(self.faces)) if face_id in self.contains[i]]

    def top_face_id(self) -> int:
        tops = [i for i, f in enumerate(self.faces) if f.dim == self.ambient_dim]
        if len(tops) != 1:
            raise LatticeError("expected a unique top face")
        return tops[0]

    # -- numeric invariants --------------------------------------------------

    def f_vector(self) -> list[int]:
        counts = [0] * self.ambient_dim
        for f in self.faces:
            if f.dim < self.ambient_dim:
                counts[f.dim] += 1
        return counts

    def euler_char_of_boundary(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    @property
    def is_nice_corners(self) -> bool:
        """Codimension-k faces lie in exactly k facets, facets connected."""
        n = self.ambient_dim
        for f in self.faces:
            if len(f.facets) != n - f.dim:
                return False
        for fid in self.facet_ids:
            if len(self.facet_components(fid)) != 1:
                return False
        return True

    @property
    def is_simple_polytope(self) -> bool:
        """Polytope-like lattice: nice, no holes, connected intersections,
        every vertex on exactly ``ambient_dim`` facets, spherical boundary
        count.  The Euler condition is what rules out proper-face sums, whose
        boundaries stop being spheres without disturbing the local data."""
        if self.holes or not self.is_nice_corners:
            return False
        groups: dict[frozenset[int], int] = {}
        for f in self.faces:
            groups[f.facets] = groups.get(f.facets, 0) + 1
        if any(c > 1 for c in groups.values()):
            return False
        if self.euler_char_of_boundary() != 1 + (-1) ** (self.ambient_dim - 1):
            return False
        return all(len(self.faces[v].facets) == self.ambient_dim for v in self.vertex_ids)

    def validate(self) -> None:
        """Full poset checks: order consistency and gradedness of covers."""
        size = len(self.faces)
        below = self.contains
        for i in range(size):
            for j in below[i]:
                if not below[j] <= below[i]:
                    raise LatticeError("containment is not transitive")
        for i in range(size):
            for j in below[i]:
                if j == i:
                    continue
                gap = self.faces[i].dim - self.faces[j].dim
                if gap <= 0:
                    raise LatticeError("containment must increase dimension")
                if gap == 1:
                    continue
                if not any(
                    k != i and k != j and j in below[k] and k in below[i] and self.faces[k].dim == self.faces[j].dim + 1
                    for k in range(size)
                ):
                    raise LatticeError("poset is not graded")

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "facets": list(self.facet_ids),
            "faces": [
                {"id": i, "dim": f.dim, "facets": sorted(f.facets), "component": f.component}
                for i, f in enumerate(self.faces)
            ],
            "holes": self.holes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @staticmethod
    def from_json_obj(obj: Mapping) -> "FaceLattice":
        try:
            n = int(obj["ambient_dim"])
            facet_ids = [int(x) for x in obj["facets"]]
            raw = [
                (int(f["dim"]), frozenset(int(x) for x in f["facets"]), int(f["component"]))
                for f in sorted(obj["faces"], key=lambda f: int(f["id"]))
            ]
            holes = int(obj.get("holes", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise LatticeError(f"malformed lattice JSON: {exc}") from exc
        # Reconstruct containment: strict subset-inclusion of facet sets, with
        # the bigger face required to be alone in its group (otherwise the
        # component tags alone cannot say which component contains which).
        groups: dict[frozenset[int], list[int]] = {}
        for i, (_, facets, _) in enumerate(raw):
            groups.setdefault(facets, []).append(i)
        contains: dict[int, set[int]] = {i: {i} for i in range(len(raw))}
        for i, (_, fi, _) in enumerate(raw):
            for j, (_, fj, _) in enumerate(raw):
                if i == j or not (fj < fi):
                    continue
                if len(groups[fj]) > 1:
                    raise LatticeError("ambiguous containment in lattice JSON")
                contains[j].add(i)
        lattice = FaceLattice(n, facet_ids, raw, contains, holes)
        ids = [f["id"] for f in sorted(obj["faces"], key=lambda f: int(f["id"]))]
        if ids != list(range(len(raw))):
            raise LatticeError("face ids must be canonical (0..N-1 in lattice order)")
        for given, built in zip(sorted(obj["faces"], key=lambda f: int(f["id"])), lattice.faces):
            if (int(given["dim"]), frozenset(map(int, given["facets"])), int(given["component"])) != (
                built.dim,
                built.facets,
                built.component,
            ):
                raise LatticeError("face ids are not in canonical order")
        return lattice

    @staticmethod
    def from_json(text: str) -> "FaceLattice":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LatticeError(f"invalid JSON: {exc}") from exc
        return FaceLattice.from_json_obj(obj)


def _tag_key(tag: object) -> tuple:
    return tag if isinstance(tag, tuple) else (tag,)


# ---------------------------------------------------------------------------
# Standard lattices


def orbit_space_lattice(n: int) -> FaceLattice:
    """Orbit space of the torus action on the 2n-sphere.

    One face for every proper subset S of the n facets (the coordinates set to
    zero), of dimension n - |S|, plus two vertices over the full set: the two
    poles.  For n = 1 the single facet is disconnected, its two components
    being the vertices themselves.
    """
    if n < 1:
        raise LatticeError("n must be >= 1")
    facet_ids = list(range(n))
    subsets: list[frozenset[int]] = []
    for mask in range(2**n - 1):
        subsets.append(frozenset(i for i in range(n) if mask >> i & 1))
    faces: list[tuple[int, frozenset[int], object]] = []
    index: dict[tuple[frozenset[int], int], int] = {}
    for s in subsets:
        index[(s, 0)] = len(faces)
        faces.append((n - len(s), s, 0))
    full = frozenset(range(n))
    for pole in (0, 1):
        index[(full, pole)] = len(faces)
        faces.append((0, full, pole))
    contains: dict[int, set[int]] = {}
    for (s, comp), i in index.items():
        if len(s) == n:
            contains[i] = {i}  # poles contain nothing but themselves
        else:
            contains[i] = {j for (t, c), j in index.items() if t >= s}
    return FaceLattice(n, facet_ids, faces, contains)


def simplex_lattice(n: int) -> FaceLattice:
    """Boundary lattice of the n-simplex: n + 1 facets, faces = subsets."""
    if n < 1:
        raise LatticeError("n must be >= 1")
    facet_ids = list(range(n + 1))
    faces = []
    index: dict[frozenset[int], int] = {}
    for mask in range(2 ** (n + 1)):
        s = frozenset(i for i in range(n + 1) if mask >> i & 1)
        if len(s) > n:
            continue
        index[s] = len(index)
        faces.append((n - len(s), s, 0))
    contains = {i: {j for t, j in index.items() if t >= s} for s, i in index.items()}
    return FaceLattice(n, facet_ids, faces, contains)


def cube_lattice(n: int) -> FaceLattice:
    """Lattice of the n-cube; facet 2i is x_i = 0, facet 2i + 1 is x_i = 1."""
    if n < 1:
        raise LatticeError("n must be >= 1")
    facet_ids = list(range(2 * n))
    faces = []
    index: dict[frozenset[int], int] = {}

    def ok(s: frozenset[int]) -> bool:
        return not any(2 * i in s and 2 * i + 1 in s for i in range(n))

    for mask in range(2 ** (2 * n)):
        s = frozenset(i for i in range(2 * n) if mask >> i & 1)
        if not ok(s):
            continue
        index[s] = len(index)
        faces.append((n - len(s), s, 0))
    contains = {i: {j for t, j in index.items() if t >= s and ok(t)} for s, i in index.items()}
    return FaceLattice(n, facet_ids, faces, contains)


# ---------------------------------------------------------------------------
# Surgeries


@dataclass(frozen=True)
class FaceSumPlan:
    """Bookkeeping shared by the lattice surgery and characteristic merge."""

    lattice: FaceLattice
    left_facet_map: dict[int, int]
    right_facet_map: dict[int, int]
    merged_facets: tuple[int, ...]


def _sum_plan(P: FaceLattice, Q: FaceLattice, spec: SurgerySpec) -> FaceSumPlan:
    n = P.ambient_dim
    if Q.ambient_dim != n:
        raise LatticeError("dimension mismatch")
    L = P.faces[spec.left_face_id]
    R = Q.faces[spec.right_face_id]
    if L.dim != R.dim:
        raise LatticeError("chosen faces must have equal dimension")
    k = L.dim
    pairing = spec.pairing_dict()
    if k == 0:
        if not (P.is_simple_polytope and Q.is_simple_polytope):
            raise LatticeError("vertex connected sum requires simple polytopes")
    if set(pairing) != set(L.facets) or set(pairing.values()) != set(R.facets):
        raise LatticeError("facet pairing must biject the facets of the chosen faces")

    merged_pairs = [(lf, pairing[lf]) for lf in sorted(L.facets)]
    left_map: dict[int, int] = {}
    right_map: dict[int, int] = {}
    next_id = 0
    for lf, rf in merged_pairs:
        left_map[lf] = right_map[rf] = next_id
        next_id += 1
    merged_ids = tuple(range(next_id))
    for lf in P.facet_ids:
        if lf not in left_map:
            left_map[lf] = next_id
            next_id += 1
    for rf in Q.facet_ids:
        if rf not in right_map:
            right_map[rf] = next_id
            next_id += 1

    above_L = P.faces_above(spec.left_face_id)
    above_R = Q.faces_above(spec.right_face_id)
    by_set_L = {P.faces[i].facets: i for i in above_L}
    by_set_R = {Q.faces[i].facets: i for i in above_R}
    if len(by_set_L) != len(above_L) or len(by_set_R) != len(above_R):
        raise LatticeError("faces above the chosen face are not determined by facet sets")
    if len(above_L) != 2 ** len(L.facets) or len(above_R) != 2 ** len(R.facets):
        raise LatticeError("lattice is not nice around the chosen face")

    merged_of_L: dict[int, int] = {}  # P face id above L -> new face index
    faces: list[tuple[int, frozenset[int], object]] = []
    origin: list[tuple[str, int, int]] = []  # ("m", pid, qid) | ("p", pid, -1) | ("q", qid, -1)
    for pid in sorted(above_L):
        s = P.faces[pid].facets
        if k == 0 and pid == spec.left_face_id:
            continue  # the vertices themselves disappear
        t = frozenset(pairing[f] for f in s)
        if t not in by_set_R:
            raise LatticeError("pairing does not match the faces above the right face")
        qid = by_set_R[t]
        if P.faces[pid].dim != Q.faces[qid].dim:
            raise LatticeError("paired faces have mismatched dimensions")
        merged_of_L[pid] = len(faces)
        faces.append((P.faces[pid].dim, frozenset(left_map[f] for f in s), (0, tuple(sorted(s)))))
        origin.append(("m", pid, qid))
    merged_of_R = {qid: merged_of_L[pid] for kind, pid, qid in origin if kind == "m"}

    survivors_P: dict[int, int] = {}
    for pid, f in enumerate(P.faces):
        if pid in merged_of_L or (k == 0 and pid == spec.left_face_id):
            continue
        survivors_P[pid] = len(faces)
        faces.append((f.dim, frozenset(left_map[x] for x in f.facets), (1, pid)))
        origin.append(("p", pid, -1))
    survivors_Q: dict[int, int] = {}
    for qid, f in enumerate(Q.faces):
        if qid in merged_of_R or (k == 0 and qid == spec.right_face_id):
            continue
        survivors_Q[qid] = len(faces)
        faces.append((f.dim, frozenset(right_map[x] for x in f.facets), (2, qid)))
        origin.append(("q", qid, -1))

    def new_of_P(pid: int) -> Optional[int]:
        if pid in merged_of_L:
            return merged_of_L[pid]
        return survivors_P.get(pid)

    def new_of_Q(qid: int) -> Optional[int]:
        if qid in merged_of_R:
            return merged_of_R[qid]
        return survivors_Q.get(qid)

    contains: dict[int, set[int]] = {i: {i} for i in range(len(faces))}
    for i, (kind, pid, qid) in enumerate(origin):
        if kind in ("m", "p"):
            for below in P.contains[pid]:
                j = new_of_P(below)
                if j is not None:
                    contains[i].add(j)
        if kind in ("m", "q"):
            src = qid if kind == "m" else pid
            for below in Q.contains[src]:
                j = new_of_Q(below)
                if j is not None:
                    contains[i].add(j)

    holes = P.holes + Q.holes + (1 if k == n else 0)
    lattice = FaceLattice(n, list(range(next_id)), faces, contains, holes)
    return FaceSumPlan(lattice, left_map, right_map, merged_ids)


def face_connected_sum_plan(P: FaceLattice, Q: FaceLattice, spec: SurgerySpec) -> FaceSumPlan:
    return _sum_plan(P, Q, spec)


def face_connected_sum(P: FaceLattice, Q: FaceLattice, spec: SurgerySpec) -> FaceLattice:
    """Connected sum along interior points of two k-faces, 0 <= k <= n.

    Faces whose closure contains the chosen face merge pairwise along the
    facet pairing (for k = n only the two top faces merge and a hole is
    recorded; for k = 0 this is the vertex connected sum and the vertices
    themselves disappear).
    """
    return _sum_plan(P, Q, spec).lattice


def vertex_connected_sum(
    P: FaceLattice, v: int, Q: FaceLattice, w: int, pairing: Mapping[int, int]
) -> FaceLattice:
    """Connected sum of simple polytopes at vertices v and w."""
    if P.faces[v].dim != 0 or Q.faces[w].dim != 0:
        raise LatticeError("chosen faces must be vertices")
    return face_connected_sum(P, Q, SurgerySpec.make(v, w, pairing))


def holes_betti(n: int, s: int) -> BettiVector:
    """Betti vector of an n-dimensional body with s simple holes.

    Such a body is homotopy equivalent to a wedge of s spheres of dimension
    n - 1, so only degrees 0 and n - 1 carry rank (and degree 2 is nontrivial
    exactly when n = 3 and s > 0).
    """
    if n < 2 or s < 0:
        raise LatticeError("need n >= 2 and s >= 0")
    ranks = {0: 1}
    if s:
        ranks[n - 1] = s
    return BettiVector.from_ranks(ranks, n)
