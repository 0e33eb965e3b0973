"""Finite-basis graded complexes and commutative differential graded algebras.

Elements are sparse rational combinations of labeled basis elements; products
and differentials are sparse structure-constant tables.  Every construction
here is exact and deterministic: kernels come out of reduced row echelon
form, quotient representatives are pivot complements in a fixed basis order.

The verification entry points (``check_axioms``, the flags on ``Morphism``,
``IdealBasis.is_acyclic``) do exhaustive basis-pair and basis-triple checks;
the algebras involved have at most a few hundred basis elements, so brute
force is both affordable and the point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from ..betti import BettiVector
from ..exactla import LinearSolver
from ..gradedring import FiniteGradedRing

Vec = dict[int, Fraction]  # sparse element: basis index -> coefficient


def vec_add(x: Vec, y: Vec, scale: Fraction | int = 1) -> Vec:
    out = dict(x)
    for i, c in y.items():
        v = out.get(i, Fraction(0)) + Fraction(scale) * c
        if v:
            out[i] = v
        else:
            out.pop(i, None)
    return out


def vec_scale(x: Vec, scale: Fraction | int) -> Vec:
    s = Fraction(scale)
    return {i: c * s for i, c in x.items()} if s else {}


def vec_eq(x: Vec, y: Vec) -> bool:
    return vec_add(x, y, -1) == {}


class GradedComplex:
    """Labeled graded vector space with a degree +1 differential."""

    def __init__(
        self,
        labels: Sequence[str],
        degrees: Sequence[int],
        differential: Mapping[int, Vec],
    ):
        if len(labels) != len(degrees):
            raise ValueError("labels/degrees length mismatch")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        self.labels = tuple(labels)
        self.degrees = tuple(int(d) for d in degrees)
        self.differential = {
            i: {j: Fraction(c) for j, c in v.items() if c} for i, v in differential.items() if v
        }
        for i, v in self.differential.items():
            for j in v:
                if self.degrees[j] != self.degrees[i] + 1:
                    raise ValueError(f"differential of {self.labels[i]} is not degree +1")
        self._by_degree: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            self._by_degree.setdefault(d, []).append(i)
        self._cohomology: Optional[dict[int, "_DegreeCohomology"]] = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis_vec(self, i: int) -> Vec:
        return {i: Fraction(1)}

    def degree_indices(self, d: int) -> list[int]:
        return self._by_degree.get(d, [])

    def degree_span(self) -> list[int]:
        return sorted(self._by_degree)

    def element_degree(self, x: Vec) -> Optional[int]:
        degs = {self.degrees[i] for i in x}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else None

    def d(self, x: Vec) -> Vec:
        out: Vec = {}
        for i, c in x.items():
            img = self.differential.get(i)
            if img:
                out = vec_add(out, img, c)
        return out

    def coords_in_degree(self, x: Vec, degree: int) -> list[Fraction]:
        idx = self.degree_indices(degree)
        pos = {i: p for p, i in enumerate(idx)}
        out = [Fraction(0)] * len(idx)
        for i, c in x.items():
            if self.degrees[i] != degree:
                raise ValueError("element not homogeneous of the requested degree")
            out[pos[i]] = c
        return out

    def vec_from_degree_coords(self, coords: Sequence[Fraction], degree: int) -> Vec:
        idx = self.degree_indices(degree)
        return {idx[p]: Fraction(c) for p, c in enumerate(coords) if c}

    # -- cohomology ----------------------------------------------------------

    def _cohomology_data(self) -> dict[int, "_DegreeCohomology"]:
        if self._cohomology is None:
            self._cohomology = {}
            for deg in self.degree_span():
                self._cohomology[deg] = _DegreeCohomology(self, deg)
        return self._cohomology

    def betti(self) -> BettiVector:
        data = self._cohomology_data()
        ranks = {deg: dc.rank for deg, dc in data.items() if dc.rank}
        top = max(self.degrees) if self.degrees else 0
        return BettiVector.from_ranks(ranks, top)

    def cocycle_class(self, x: Vec) -> tuple[int, list[Fraction]]:
        """Degree and coordinates of a cocycle in the chosen representatives."""
        deg = self.element_degree(x)
        if deg is None:
            return 0, []
        dc = self._cohomology_data().get(deg)
        if dc is None:
            raise ValueError("degree outside the complex")
        return deg, dc.class_coords(x)

    def representatives(self, degree: int) -> list[Vec]:
        dc = self._cohomology_data().get(degree)
        return [] if dc is None else [dict(r) for r in dc.reps]


class _DegreeCohomology:
    """Cycles, boundaries, chosen representatives and class coordinates."""

    def __init__(self, X: GradedComplex, degree: int):
        idx = X.degree_indices(degree)
        dim = len(idx)
        # cycles: kernel of d restricted to this degree
        target = X.degree_indices(degree + 1)
        rows = []
        for i in idx:
            img = X.differential.get(i, {})
            rows.append([img.get(t, Fraction(0)) for t in target])
        from ..exactla import RatMatrix, rank_and_kernel

        if dim:
            mat = RatMatrix.from_rows(list(zip(*rows)) if target else [[Fraction(0)] * dim])
            _, kernel = rank_and_kernel(mat)
        else:
            kernel = []
        self.deg = degree
        self.indices = idx
        self.cycles = [list(v) for v in kernel]
        prev = X.degree_indices(degree - 1)
        boundaries: list[list[Fraction]] = []
        pos = {i: p for p, i in enumerate(idx)}
        for j in prev:
            img = X.differential.get(j, {})
            if img:
                boundaries.append([Fraction(0)] * dim)
                for t, c in img.items():
                    boundaries[-1][pos[t]] = c
        solver = LinearSolver(dim)
        self.boundary_basis: list[list[Fraction]] = []
        for b in boundaries:
            if solver.add(b):
                self.boundary_basis.append(b)
        self.reps: list[Vec] = []
        for v in self.cycles:
            if solver.add(v):
                self.reps.append(X.vec_from_degree_coords(v, degree))
        self.rank = len(self.reps)
        self._class_solver = LinearSolver(dim)
        for b in self.boundary_basis:
            self._class_solver.add(b)
        self._n_boundaries = len(self.boundary_basis)
        for r in self.reps:
            self._class_solver.add(X.coords_in_degree(r, degree))
        self._X = X

    def class_coords(self, x: Vec) -> list[Fraction]:
        coords = self._class_solver.coordinates(self._X.coords_in_degree(x, self.deg))
        if coords is None:
            raise ValueError("element is not a cocycle modulo boundaries")
        return coords[self._n_boundaries :]


class CDGA(GradedComplex):
    """Graded-commutative differential algebra with explicit basis."""

    def __init__(
        self,
        labels: Sequence[str],
        degrees: Sequence[int],
        unit: int,
        products: Mapping[tuple[int, int], Vec],
        differential: Mapping[int, Vec],
    ):
        super().__init__(labels, degrees, differential)
        self.unit = unit
        self.products = {
            key: {j: Fraction(c) for j, c in v.items() if c} for key, v in products.items() if v
        }
        for (i, j), v in self.products.items():
            want = self.degrees[i] + self.degrees[j]
            if any(self.degrees[t] != want for t in v):
                raise ValueError(f"product {self.labels[i]} * {self.labels[j]} is not graded")

    def multiply(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                row = self.products.get((i, j))
                if row:
                    out = vec_add(out, row, a * b)
        return out

    def multiply_basis(self, i: int, j: int) -> Vec:
        return dict(self.products.get((i, j), {}))

    # -- verification ---------------------------------------------------------

    def axiom_violations(self, max_reports: int = 10) -> list[str]:
        out: list[str] = []
        n = self.dim

        def report(msg: str) -> bool:
            out.append(msg)
            return len(out) >= max_reports

        for i in range(n):
            if self.d(self.d(self.basis_vec(i))):
                if report(f"d^2 != 0 at {self.labels[i]}"):
                    return out
        for i in range(n):
            u = self.multiply_basis(self.unit, i)
            v = self.multiply_basis(i, self.unit)
            if u != {i: Fraction(1)} or v != {i: Fraction(1)}:
                if report(f"unit fails at {self.labels[i]}"):
                    return out
        for i in range(n):
            di = self.degrees[i]
            for j in range(n):
                pij = self.products.get((i, j), {})
                pji = self.products.get((j, i), {})
                sign = -1 if (di * self.degrees[j]) % 2 else 1
                if not vec_eq(pij, vec_scale(pji, sign)):
                    if report(f"commutativity fails at ({self.labels[i]}, {self.labels[j]})"):
                        return out
                lhs = self.d(pij)
                rhs = vec_add(
                    self.multiply(self.d(self.basis_vec(i)), self.basis_vec(j)),
                    self.multiply(self.basis_vec(i), self.d(self.basis_vec(j))),
                    -1 if di % 2 else 1,
                )
                if not vec_eq(lhs, rhs):
                    if report(f"Leibniz fails at ({self.labels[i]}, {self.labels[j]})"):
                        return out
        # associativity: skip triples where both partial products vanish
        for i in range(n):
            for j in range(n):
                pij = self.products.get((i, j))
                for t in range(n):
                    pjt = self.products.get((j, t))
                    if not pij and not pjt:
                        continue
                    lhs = self.multiply(pij or {}, self.basis_vec(t))
                    rhs = self.multiply(self.basis_vec(i), pjt or {})
                    if not vec_eq(lhs, rhs):
                        if report(
                            f"associativity fails at ({self.labels[i]}, {self.labels[j]}, {self.labels[t]})"
                        ):
                            return out
        return out

    # -- cohomology ring -------------------------------------------------------

    def cohomology_ring(self) -> FiniteGradedRing:
        data = self._cohomology_data()
        labels: list[str] = []
        degrees: list[int] = []
        reps: list[Vec] = []
        for deg in self.degree_span():
            for p, r in enumerate(data[deg].reps):
                labels.append(f"h{deg}_{p}")
                degrees.append(deg)
                reps.append(r)
        unit_candidates = [p for p, d in enumerate(degrees) if d == 0]
        if len(unit_candidates) != 1:
            raise ValueError("cohomology ring needs a one-dimensional degree 0")
        unit = unit_candidates[0]
        offsets: dict[int, int] = {}
        for p, dg in enumerate(degrees):
            offsets.setdefault(dg, p)
        products: dict[tuple[int, int], Vec] = {}
        for a in range(len(reps)):
            for b in range(len(reps)):
                w = self.multiply(reps[a], reps[b])
                if not w:
                    continue
                deg = degrees[a] + degrees[b]
                if deg not in data:
                    if any(c for c in w.values()):
                        raise ValueError("product escapes the graded range")
                    continue
                coords = data[deg].class_coords(w)
                row = {offsets[deg] + q: c for q, c in enumerate(coords) if c}
                if row:
                    products[(a, b)] = row
        top = max(degrees) if degrees else 0
        fundamental = None
        top_reps = [p for p, dg in enumerate(degrees) if dg == top]
        if len(top_reps) == 1 and top > 0:
            fundamental = top_reps[0]
        return FiniteGradedRing.make(
            labels=labels,
            degrees=degrees,
            unit=unit,
            products=products,
            top_degree=top,
            fundamental_class=fundamental,
        )


def check_axioms(X: CDGA) -> list[str]:
    """Exhaustive CDGA axiom check; empty list means all axioms hold."""
    return X.axiom_violations()


def cohomology(X: CDGA) -> tuple[BettiVector, FiniteGradedRing]:
    return X.betti(), X.cohomology_ring()


# ---------------------------------------------------------------------------
# Morphisms


class Morphism:
    """Degree-preserving linear map given by images of basis elements.

    ``verified`` records which properties have been checked: subsets of
    {"chain", "algebra", "injective", "surjective", "quasi-iso"}.
    """

    def __init__(
        self,
        source: GradedComplex,
        target: GradedComplex,
        images: Sequence[Vec],
        name: str = "f",
    ):
        if len(images) != source.dim:
            raise ValueError("need one image per source basis element")
        self.source = source
        self.target = target
        self.images = [
            {j: Fraction(c) for j, c in img.items() if c} for img in images
        ]
        self.name = name
        for i, img in enumerate(self.images):
            for j in img:
                if target.degrees[j] != source.degrees[i]:
                    raise ValueError(f"{name} does not preserve degree at {source.labels[i]}")
        self.verified: set[str] = set()

    def apply(self, x: Vec) -> Vec:
        out: Vec = {}
        for i, c in x.items():
            out = vec_add(out, self.images[i], c)
        return out

    def compose(self, other: "Morphism", name: str = "") -> "Morphism":
        """self after other (source of self must be target of other)."""
        if other.target is not self.source:
            raise ValueError("composition mismatch")
        return Morphism(
            other.source,
            self.target,
            [self.apply(img) for img in other.images],
            name or f"{self.name}*{other.name}",
        )

    # -- checks ---------------------------------------------------------------

    def check_chain_map(self) -> bool:
        ok = all(
            vec_eq(self.apply(self.source.d(self.source.basis_vec(i))), self.target.d(self.images[i]))
            for i in range(self.source.dim)
        )
        if ok:
            self.verified.add("chain")
        return ok

    def check_algebra_map(self) -> bool:
        src, tgt = self.source, self.target
        if not isinstance(src, CDGA) or not isinstance(tgt, CDGA):
            raise TypeError("algebra map check needs CDGA source and target")
        if not vec_eq(self.images[src.unit], tgt.basis_vec(tgt.unit)):
            return False
        for i in range(src.dim):
            for j in range(src.dim):
                lhs = self.apply(src.multiply_basis(i, j))
                rhs = tgt.multiply(self.images[i], self.images[j])
                if not vec_eq(lhs, rhs):
                    return False
        self.verified.add("algebra")
        return True

    def matrix_for_degree(self, degree: int) -> list[list[Fraction]]:
        src = self.source.degree_indices(degree)
        tgt = self.target.degree_indices(degree)
        pos = {t: p for p, t in enumerate(tgt)}
        rows = []
        for i in src:
            row = [Fraction(0)] * len(tgt)
            for t, c in self.images[i].items():
                row[pos[t]] = c
            rows.append(row)
        return rows

    def check_injective(self) -> bool:
        from ..exactla import matrix_rank

        degs = set(self.source.degree_span())
        ok = all(
            matrix_rank(self.matrix_for_degree(d) or [[Fraction(0)]]) == len(self.source.degree_indices(d))
            for d in degs
            if self.source.degree_indices(d)
        )
        if ok:
            self.verified.add("injective")
        return ok

    def check_surjective(self) -> bool:
        from ..exactla import matrix_rank

        ok = True
        for d in self.target.degree_span():
            tgt = self.target.degree_indices(d)
            if not tgt:
                continue
            rows = self.matrix_for_degree(d)
            if not rows or matrix_rank(rows) < len(tgt):
                ok = False
                break
        if ok:
            self.verified.add("surjective")
        return ok

    def check_quasi_iso(self) -> bool:
        src, tgt = self.source, self.target
        for d in sorted(set(src.degree_span()) | set(tgt.degree_span())):
            s_reps = src.representatives(d)
            t_rank = len(tgt.representatives(d))
            if len(s_reps) != t_rank:
                return False
            if not s_reps:
                continue
            rows = []
            for r in s_reps:
                _, coords = tgt.cocycle_class(self.apply(r))
                rows.append(coords)
            from ..exactla import matrix_rank

            if matrix_rank(rows) != t_rank:
                return False
        self.verified.add("quasi-iso")
        return True


def is_quasi_iso(f: Morphism) -> bool:
    return f.check_quasi_iso()


# ---------------------------------------------------------------------------
# Constructions


def tensor_cdga(X: CDGA, Y: CDGA, sep: str = "@") -> tuple[CDGA, Callable[[int, int], int]]:
    """Tensor product with Koszul signs; returns the algebra and an index map."""
    pairs = [(i, j) for i in range(X.dim) for j in range(Y.dim)]
    pos = {p: q for q, p in enumerate(pairs)}
    labels = [f"{X.labels[i]}{sep}{Y.labels[j]}" for i, j in pairs]
    degrees = [X.degrees[i] + Y.degrees[j] for i, j in pairs]
    unit = pos[(X.unit, Y.unit)]
    products: dict[tuple[int, int], Vec] = {}
    for (i, j), q1 in pos.items():
        for (i2, j2), q2 in pos.items():
            px = X.products.get((i, i2))
            py = Y.products.get((j, j2))
            if not px or not py:
                continue
            sign = -1 if (Y.degrees[j] * X.degrees[i2]) % 2 else 1
            row: Vec = {}
            for a, ca in px.items():
                for b, cb in py.items():
                    c = Fraction(sign) * ca * cb
                    if c:
                        row[pos[(a, b)]] = row.get(pos[(a, b)], Fraction(0)) + c
            row = {t: c for t, c in row.items() if c}
            if row:
                products[(q1, q2)] = row
    differential: dict[int, Vec] = {}
    for (i, j), q in pos.items():
        row: Vec = {}
        for a, c in X.differential.get(i, {}).items():
            row[pos[(a, j)]] = row.get(pos[(a, j)], Fraction(0)) + c
        sign = -1 if X.degrees[i] % 2 else 1
        for b, c in Y.differential.get(j, {}).items():
            t = pos[(i, b)]
            row[t] = row.get(t, Fraction(0)) + Fraction(sign) * c
        row = {t: c for t, c in row.items() if c}
        if row:
            differential[q] = row
    return CDGA(labels, degrees, unit, products, differential), lambda i, j: pos[(i, j)]


def augmented_product(
    X: CDGA, Y: CDGA, left_prefix: str = "L:", right_prefix: str = "R:"
) -> tuple[CDGA, Callable[[Vec, Vec], Vec]]:
    """Pairs (x, y) with equal augmentation, componentwise operations.

    Returns the algebra and a packer taking (x, y) in the factors' coordinates
    to an element of the product (the degree-0 parts must agree).
    """
    labels = ["1"]
    degrees = [0]
    left_pos: dict[int, int] = {}
    right_pos: dict[int, int] = {}
    for i in range(X.dim):
        if i == X.unit:
            continue
        if X.degrees[i] == 0:
            raise ValueError("factors must be connected (degree 0 spanned by the unit)")
        left_pos[i] = len(labels)
        labels.append(f"{left_prefix}{X.labels[i]}")
        degrees.append(X.degrees[i])
    for j in range(Y.dim):
        if j == Y.unit:
            continue
        if Y.degrees[j] == 0:
            raise ValueError("factors must be connected (degree 0 spanned by the unit)")
        right_pos[j] = len(labels)
        labels.append(f"{right_prefix}{Y.labels[j]}")
        degrees.append(Y.degrees[j])

    def left_vec(v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            if i == X.unit:
                out[0] = out.get(0, Fraction(0)) + c
            else:
                out[left_pos[i]] = c
        return {t: c for t, c in out.items() if c}

    def right_vec(v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            if j == Y.unit:
                out[0] = out.get(0, Fraction(0)) + c
            else:
                out[right_pos[j]] = c
        return {t: c for t, c in out.items() if c}

    products: dict[tuple[int, int], Vec] = {}
    differential: dict[int, Vec] = {}
    dim = len(labels)
    for p in range(dim):
        products[(0, p)] = {p: Fraction(1)}
        if p:
            products[(p, 0)] = {p: Fraction(1)}
    for i, p in left_pos.items():
        img = X.differential.get(i)
        if img:
            differential[p] = left_vec(img)
        for i2, p2 in left_pos.items():
            row = X.products.get((i, i2))
            if row:
                v = left_vec(row)
                if v:
                    products[(p, p2)] = v
    for j, p in right_pos.items():
        img = Y.differential.get(j)
        if img:
            differential[p] = right_vec(img)
        for j2, p2 in right_pos.items():
            row = Y.products.get((j, j2))
            if row:
                v = right_vec(row)
                if v:
                    products[(p, p2)] = v
    prod = CDGA(labels, degrees, 0, products, differential)

    def pack(x: Vec, y: Vec) -> Vec:
        xa = x.get(X.unit, Fraction(0))
        ya = y.get(Y.unit, Fraction(0))
        if xa != ya:
            raise ValueError("augmentations disagree")
        out = left_vec({i: c for i, c in x.items() if i != X.unit})
        for j, c in y.items():
            if j == Y.unit:
                continue
            out[right_pos[j]] = out.get(right_pos[j], Fraction(0)) + c
        if xa:
            out[0] = xa
        return {t: c for t, c in out.items() if c}

    return prod, pack


def _kernel_basis(
    P: GradedComplex, psi: Morphism, prefix: str
) -> tuple[list[str], list[int], list[Vec], Callable[[Vec], Vec]]:
    """Degreewise rref-canonical kernel of a degree-preserving linear map."""
    basis: list[Vec] = []
    labels: list[str] = []
    degrees: list[int] = []
    solvers: dict[int, LinearSolver] = {}
    offsets: dict[int, int] = {}
    from ..exactla import RatMatrix, rank_and_kernel

    for deg in P.degree_span():
        idx = P.degree_indices(deg)
        tgt = psi.target.degree_indices(deg)
        rows = []
        for i in idx:
            img = psi.images[i]
            rows.append([img.get(t, Fraction(0)) for t in tgt])
        if tgt:
            mat = RatMatrix.from_rows(list(zip(*rows)))
            _, kernel = rank_and_kernel(mat)
        else:
            kernel = [
                tuple(Fraction(1) if q == p else Fraction(0) for q in range(len(idx)))
                for p in range(len(idx))
            ]
        solver = LinearSolver(len(idx))
        offsets[deg] = len(labels)
        for count, v in enumerate(kernel):
            solver.add(list(v))
            labels.append(f"{prefix}{deg}_{count}")
            degrees.append(deg)
            basis.append(P.vec_from_degree_coords(list(v), deg))
        solvers[deg] = solver

    def coords_of(vec: Vec) -> Vec:
        if not vec:
            return {}
        deg = P.element_degree(vec)
        solver = solvers.get(deg)
        if solver is None:
            raise ValueError("element in empty degree")
        coords = solver.coordinates(P.coords_in_degree(vec, deg))
        if coords is None:
            raise ValueError("element escapes the kernel")
        return {offsets[deg] + q: c for q, c in enumerate(coords) if c}

    return labels, degrees, basis, coords_of


def kernel_subalgebra(
    P: CDGA, psi: Morphism, prefix: str = "d"
) -> tuple[CDGA, Morphism, Callable[[Vec], Vec]]:
    """The kernel of a chain map as a CDGA, with the inclusion and a
    coordinate function for ambient elements.

    ``psi`` must be a chain map whose kernel is multiplicatively closed (true
    for differences of algebra maps over a common target).  Basis vectors are
    rref-canonical per degree; products are re-expressed through exact solves.
    """
    labels, degrees, basis, coords_of = _kernel_basis(P, psi, prefix)
    unit_vec = coords_of(P.basis_vec(P.unit))
    if list(unit_vec.values()) != [Fraction(1)]:
        raise ValueError("kernel must contain the unit cleanly")
    unit = next(iter(unit_vec))
    products: dict[tuple[int, int], Vec] = {}
    for a in range(len(basis)):
        for b in range(len(basis)):
            w = P.multiply(basis[a], basis[b])
            if w:
                row = coords_of(w)
                if row:
                    products[(a, b)] = row
    differential: dict[int, Vec] = {}
    for a in range(len(basis)):
        w = P.d(basis[a])
        if w:
            differential[a] = coords_of(w)
    D = CDGA(labels, degrees, unit, products, differential)
    include = Morphism(D, P, basis, name="incl")
    return D, include, coords_of


def kernel_subcomplex(
    P: GradedComplex, psi: Morphism, prefix: str = "k"
) -> tuple[GradedComplex, Morphism, Callable[[Vec], Vec]]:
    """Kernel of a chain map as a bare complex (no product structure)."""
    labels, degrees, basis, coords_of = _kernel_basis(P, psi, prefix)
    differential: dict[int, Vec] = {}
    for a in range(len(basis)):
        w = P.d(basis[a])
        if w:
            differential[a] = coords_of(w)
    K = GradedComplex(labels, degrees, differential)
    include = Morphism(K, P, basis, name="incl")
    return K, include, coords_of


@dataclass
class IdealBasis:
    """Span of an ideal closed under products with the parent and under d."""

    parent: CDGA
    vectors: list[Vec] = field(default_factory=list)
    solvers: dict[int, LinearSolver] = field(default_factory=dict)
    grew_beyond_generators: bool = False

    def _solver(self, deg: int) -> LinearSolver:
        if deg not in self.solvers:
            self.solvers[deg] = LinearSolver(len(self.parent.degree_indices(deg)))
        return self.solvers[deg]

    def contains(self, vec: Vec) -> bool:
        if not vec:
            return True
        deg = self.parent.element_degree(vec)
        return self._solver(deg).contains(self.parent.coords_in_degree(vec, deg))

    def _add(self, vec: Vec) -> bool:
        if not vec:
            return False
        deg = self.parent.element_degree(vec)
        if self._solver(deg).add(self.parent.coords_in_degree(vec, deg)):
            self.vectors.append(vec)
            return True
        return False

    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.vectors:
            deg = self.parent.element_degree(v)
            out[deg] = out.get(deg, 0) + 1
        return out

    def dimension(self) -> int:
        return len(self.vectors)

    def is_acyclic(self) -> bool:
        by_deg: dict[int, list[Vec]] = {}
        for v in self.vectors:
            by_deg.setdefault(self.parent.element_degree(v), []).append(v)
        ranks: dict[int, int] = {}
        from ..exactla import matrix_rank

        for deg, vecs in sorted(by_deg.items()):
            nxt = self.parent.degree_indices(deg + 1)
            rows = []
            for v in vecs:
                img = self.parent.d(v)
                if not self.contains(img):
                    raise ValueError("ideal span not closed under d")
                rows.append([img.get(t, Fraction(0)) for t in nxt])
            ranks[deg] = matrix_rank(rows) if rows else 0
        for deg, vecs in by_deg.items():
            if len(vecs) - ranks.get(deg, 0) - ranks.get(deg - 1, 0) != 0:
                return False
        return True


def ideal_closure(parent: CDGA, generators: Iterable[Vec]) -> IdealBasis:
    """Fixpoint of the span under basis multiplication and the differential."""
    ideal = IdealBasis(parent)
    n_generators = 0
    work: list[Vec] = []
    for g in generators:
        n_generators += 1
        if ideal._add(dict(g)):
            work.append(dict(g))
    while work:
        v = work.pop()
        candidates = [parent.d(v)]
        for b in range(parent.dim):
            if b == parent.unit:
                continue
            candidates.append(parent.multiply(v, parent.basis_vec(b)))
        for w in candidates:
            if w and ideal._add(w):
                ideal.grew_beyond_generators = True
                work.append(w)
    return ideal


def quotient_cdga(D: CDGA, J: IdealBasis, prefix: str = "q") -> tuple[CDGA, Morphism]:
    """Quotient by a differential ideal, with deterministic representatives.

    Per degree the ideal is put in reduced row echelon form over the parent
    basis order; the quotient basis is the classes of the non-pivot parent
    basis elements.
    """
    if J.parent is not D:
        raise ValueError("ideal does not belong to this algebra")
    red_rows: dict[int, list[tuple[int, list[Fraction]]]] = {}
    rep_positions: dict[int, list[int]] = {}
    from ..exactla import rref

    for deg in D.degree_span():
        idx = D.degree_indices(deg)
        vecs = [D.coords_in_degree(v, deg) for v in J.vectors if D.element_degree(v) == deg]
        rows, pivots = rref(vecs)
        red_rows[deg] = list(zip(pivots, rows))
        rep_positions[deg] = [p for p in range(len(idx)) if p not in pivots]

    labels: list[str] = []
    degrees: list[int] = []
    source: list[tuple[int, int]] = []  # (degree, position within degree)
    qpos: dict[tuple[int, int], int] = {}
    for deg in D.degree_span():
        idx = D.degree_indices(deg)
        for p in rep_positions[deg]:
            qpos[(deg, p)] = len(labels)
            labels.append(f"{prefix}[{D.labels[idx[p]]}]")
            degrees.append(deg)
            source.append((deg, p))

    def reduce(vec: Vec) -> Vec:
        if not vec:
            return {}
        deg = D.element_degree(vec)
        coords = D.coords_in_degree(vec, deg)
        for pivot, row in red_rows.get(deg, []):
            if coords[pivot]:
                f = coords[pivot]
                coords = [c - f * r for c, r in zip(coords, row)]
        out: Vec = {}
        for p, c in enumerate(coords):
            if c:
                out[qpos[(deg, p)]] = c
        return out

    unit_image = reduce(D.basis_vec(D.unit))
    if list(unit_image.values()) != [Fraction(1)]:
        raise ValueError("unit dies in the quotient")
    unit = next(iter(unit_image))

    rep_vec: list[Vec] = []
    for deg, p in source:
        idx = D.degree_indices(deg)
        rep_vec.append(D.basis_vec(idx[p]))
    products: dict[tuple[int, int], Vec] = {}
    for a in range(len(labels)):
        for b in range(len(labels)):
            w = D.multiply(rep_vec[a], rep_vec[b])
            row = reduce(w)
            if row:
                products[(a, b)] = row
    differential: dict[int, Vec] = {}
    for a in range(len(labels)):
        img = reduce(D.d(rep_vec[a]))
        if img:
            differential[a] = img
    Q = CDGA(labels, degrees, unit, products, differential)
    pi = Morphism(D, Q, [reduce(D.basis_vec(i)) for i in range(D.dim)], name="pi")
    return Q, pi
