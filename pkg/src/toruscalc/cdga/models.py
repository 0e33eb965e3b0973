"""The graded models of the doubled even sphere glued along a torus orbit.

For 1 <= k <= n this module constructs, over exact rationals:

* ``C``: the boundary of an orbit tube, an exterior algebra on k circle
  classes and one sphere class of degree 2n-k-1 (nilpotent by fiat; every
  computation here lives below degree 2n, where the truncation is invisible).
* ``B``: the tube complement, with trivial products, one top class ``c`` and
  one relation ``d(a_1..a_k b') = c``.
* ``E'``: an acyclic exterior-with-differentials algebra whose normal forms
  are the words ``a_I`` and ``da_s a_I`` with every index of I above s.
* ``B' = E' (x) B`` and the surjective replacement ``phi': B' -> C`` of the
  restriction map ``phi: B -> C``.
* ``D``: the kernel of ``phi' - phi`` on the augmentation-matched direct sum,
  the pullback model of the glued manifold.
* ``J``: an acyclic differential ideal of ``D`` whose quotient is isomorphic
  to the small zero-differential model ``A``, and the quasi-isomorphisms
  ``pi: D -> D/J`` and ``pi xi: A -> D/J``.
* ``Dbar``: the differential-graded-module shadow of ``D`` through which
  ``xi`` factors, with the injection ``eta`` and the inclusion into ``D``.

Sign conventions: generators are ordered ``a_1 < ... < a_k < da_1 < ... <
da_k < b/b' < c`` and every word is normalized to that order with Koszul
signs.  All identities quoted in the checks are stated for normalized words;
the construction then verifies them mechanically (chain map, algebra map,
quasi-isomorphism, ideal closure and acyclicity) rather than trusting them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Optional

from ..betti import BettiVector, conn_sum_betti_mv, orbit_complement_wedge, torus_betti
from ..exactla import LinearSolver, matrix_rank
from .core import (
    CDGA,
    IdealBasis,
    Morphism,
    Vec,
    augmented_product,
    ideal_closure,
    kernel_subalgebra,
    kernel_subcomplex,
    quotient_cdga,
    tensor_cdga,
    vec_eq,
    vec_scale,
)

Subset = tuple[int, ...]


def _subsets(k: int, nonempty: bool = False) -> list[Subset]:
    out: list[Subset] = []
    for size in range(0 if not nonempty else 1, k + 1):
        out.extend(combinations(range(1, k + 1), size))
    return out


def _shuffle_sign(I: Iterable[int], J: Iterable[int]) -> int:
    """Sign of merging two ascending disjoint index tuples."""
    inversions = sum(1 for i in I for j in J if i > j)
    return -1 if inversions % 2 else 1


def _word_mul(
    w1: tuple[str, ...], w2: tuple[str, ...], order: dict[str, int], parity: dict[str, int]
) -> tuple[int, Optional[tuple[str, ...]]]:
    """Merge canonical words with Koszul signs; a repeated letter gives zero."""
    sign = 1
    out: list[str] = []
    suffix = [0] * (len(w1) + 1)
    for p in range(len(w1) - 1, -1, -1):
        suffix[p] = (suffix[p + 1] + parity[w1[p]]) % 2
    i = j = 0
    while i < len(w1) and j < len(w2):
        if w1[i] == w2[j]:
            return 0, None
        if order[w1[i]] < order[w2[j]]:
            out.append(w1[i])
            i += 1
        else:
            if parity[w2[j]] and suffix[i]:
                sign = -sign
            out.append(w2[j])
            j += 1
    out.extend(w1[i:])
    out.extend(w2[j:])
    return sign, tuple(out)


def _label(word: tuple[str, ...]) -> str:
    return "".join(word) if word else "1"


# ---------------------------------------------------------------------------
# The four building-block algebras


def exterior_torus_model(k: int) -> CDGA:
    """Exterior algebra on k degree-1 classes, zero differential."""
    if k < 0:
        raise ValueError("k must be >= 0")
    order = {f"a{i}": i for i in range(1, k + 1)}
    parity = {g: 1 for g in order}
    words = [tuple(f"a{i}" for i in I) for I in _subsets(k)]
    index = {w: p for p, w in enumerate(words)}
    labels = [_label(w) for w in words]
    degrees = [len(w) for w in words]
    products: dict[tuple[int, int], Vec] = {}
    for w1, p1 in index.items():
        for w2, p2 in index.items():
            sign, w = _word_mul(w1, w2, order, parity)
            if w is not None:
                products[(p1, p2)] = {index[w]: Fraction(sign)}
    return CDGA(labels, degrees, index[()], products, {})


def boundary_model(n: int, k: int) -> CDGA:
    """Model C of the tube boundary: torus classes and one sphere class b."""
    _check_nk(n, k)
    deg_b = 2 * n - k - 1
    order = {f"a{i}": i for i in range(1, k + 1)}
    order["b"] = k + 1
    parity = {f"a{i}": 1 for i in range(1, k + 1)}
    parity["b"] = deg_b % 2
    words = []
    for I in _subsets(k):
        base = tuple(f"a{i}" for i in I)
        words.append(base)
        words.append(base + ("b",))
    index = {w: p for p, w in enumerate(words)}
    labels = [_label(w) for w in words]
    degrees = [sum(1 if g != "b" else deg_b for g in w) for w in words]
    products: dict[tuple[int, int], Vec] = {}
    for w1, p1 in index.items():
        for w2, p2 in index.items():
            sign, w = _word_mul(w1, w2, order, parity)
            if w is not None and w in index:
                products[(p1, p2)] = {index[w]: Fraction(sign)}
    return CDGA(labels, degrees, index[()], products, {})


def complement_model(n: int, k: int) -> CDGA:
    """Model B of the tube complement: 1, c, and b'-multiples of torus words.

    All products of positive-degree elements vanish; the only differential is
    d(a_1...a_k b') = c.
    """
    _check_nk(n, k)
    deg_bp = 2 * n - k - 1
    labels = ["1", "c"]
    degrees = [0, 2 * n]
    word_index: dict[Subset, int] = {}
    for I in _subsets(k):
        word_index[I] = len(labels)
        labels.append(_label(tuple(f"a{i}" for i in I) + ("b'",)))
        degrees.append(len(I) + deg_bp)
    dim = len(labels)
    products: dict[tuple[int, int], Vec] = {(0, 0): {0: Fraction(1)}}
    for p in range(1, dim):
        products[(0, p)] = {p: Fraction(1)}
        products[(p, 0)] = {p: Fraction(1)}
    full = tuple(range(1, k + 1))
    differential = {word_index[full]: {1: Fraction(1)}}
    return CDGA(labels, degrees, 0, products, differential)


def eprime_model(k: int) -> CDGA:
    """The acyclic algebra E' on a_i, da_i modulo the monomial ideal.

    Normal forms: plain words a_I, and words a_I da_s with min(I) > s.  The
    differential of a_I keeps only its leading term da_{min I} a_{I minus}.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    order = {f"a{i}": i for i in range(1, k + 1)}
    order.update({f"da{i}": k + i for i in range(1, k + 1)})
    parity = {f"a{i}": 1 for i in range(1, k + 1)}
    parity.update({f"da{i}": 0 for i in range(1, k + 1)})

    words: list[tuple[Subset, Optional[int]]] = [(I, None) for I in _subsets(k)]
    for s in range(1, k + 1):
        for I in _subsets(k):
            if all(i > s for i in I):
                words.append((I, s))

    def to_word(item: tuple[Subset, Optional[int]]) -> tuple[str, ...]:
        I, s = item
        w = tuple(f"a{i}" for i in I)
        return w + ((f"da{s}",) if s else ())

    index = {to_word(item): p for p, item in enumerate(words)}
    labels = [_label(to_word(item)) for item in words]
    degrees = [len(item[0]) + (2 if item[1] else 0) for item in words]

    def reduce_word(w: tuple[str, ...]) -> Optional[tuple[str, ...]]:
        das = [g for g in w if g.startswith("da")]
        if len(das) >= 2:
            return None
        if len(das) == 1:
            s = int(das[0][2:])
            if any(not g.startswith("da") and int(g[1:]) <= s for g in w):
                return None
        return w

    products: dict[tuple[int, int], Vec] = {}
    for w1, p1 in index.items():
        for w2, p2 in index.items():
            sign, w = _word_mul(w1, w2, order, parity)
            if w is None:
                continue
            w = reduce_word(w)
            if w is not None:
                products[(p1, p2)] = {index[w]: Fraction(sign)}
    differential: dict[int, Vec] = {}
    for (I, s), p in ((item, index[to_word(item)]) for item in words):
        if s is None and I:
            rest = tuple(i for i in I if i != I[0])
            target = index[to_word((rest, I[0]))]
            differential[p] = {target: Fraction(1)}
    return CDGA(labels, degrees, index[()], products, differential)


def _check_nk(n: int, k: int) -> None:
    if n < 2 or not 1 <= k <= n:
        raise ValueError("need n >= 2 and 1 <= k <= n")
    if 2 * n - k - 1 < 1:
        raise ValueError("sphere class degree must be positive")


def pullback_kernel(
    phi_prime: Morphism, phi: Morphism, prefix: str = "D"
) -> tuple[CDGA, Morphism]:
    """Kernel of the difference of two algebra maps with a common target,
    inside the augmentation-matched direct sum of their sources."""
    if phi_prime.target is not phi.target:
        raise ValueError("the two maps must share a target")
    P, _pack = augmented_product(phi_prime.source, phi.source)
    images: list[Vec] = []
    for label in P.labels:
        if label == "1":
            images.append({})
        elif label.startswith("L:"):
            images.append(dict(phi_prime.images[phi_prime.source.index(label[2:])]))
        else:
            images.append(vec_scale(phi.images[phi.source.index(label[2:])], -1))
    psi = Morphism(P, phi.target, images, name="difference")
    D, include, _ = kernel_subalgebra(P, psi, prefix)
    return D, include


def model_A(n: int, k: int) -> CDGA:
    """The small zero-differential model of the glued double sphere.

    Basis: 1, u_I of degree |I| + 1, v_I of degree 2n - 1 - |I| (both over
    nonempty I), and the top class mu of degree 2n.  The only nonzero products
    of positive-degree elements pair u_I with v_I to -mu.
    """
    _check_nk(n, k)
    labels = ["1"]
    degrees = [0]
    u_index: dict[Subset, int] = {}
    v_index: dict[Subset, int] = {}
    for I in _subsets(k, nonempty=True):
        u_index[I] = len(labels)
        labels.append("u" + "".join(map(str, I)))
        degrees.append(len(I) + 1)
    for I in _subsets(k, nonempty=True):
        v_index[I] = len(labels)
        labels.append("v" + "".join(map(str, I)))
        degrees.append(2 * n - 1 - len(I))
    mu = len(labels)
    labels.append("mu")
    degrees.append(2 * n)
    products: dict[tuple[int, int], Vec] = {(0, 0): {0: Fraction(1)}}
    for p in range(1, len(labels)):
        products[(0, p)] = {p: Fraction(1)}
        products[(p, 0)] = {p: Fraction(1)}
    for I, pu in u_index.items():
        pv = v_index[I]
        products[(pu, pv)] = {mu: Fraction(-1)}
        sign = -1 if (degrees[pu] * degrees[pv]) % 2 else 1
        products[(pv, pu)] = {mu: Fraction(-sign)}
    return CDGA(labels, degrees, 0, products, {})


# ---------------------------------------------------------------------------
# The full tower for one (n, k)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    details: str

    def to_json_obj(self) -> dict:
        return {"ok": self.ok, "details": self.details}


class SphereSumModels:
    """Everything needed to verify the model tower at one (n, k)."""

    def __init__(self, n: int, k: int):
        _check_nk(n, k)
        self.n, self.k = n, k
        self.C = boundary_model(n, k)
        self.B = complement_model(n, k)
        self.E = eprime_model(k)
        self.Bp, self._tpos = tensor_cdga(self.E, self.B)
        self.phi = self._make_phi()
        self.phi_prime = self._make_phi_prime()
        self.P, self._pack = augmented_product(self.Bp, self.B)
        psi_images = self._psi_images()
        self.psi = Morphism(self.P, self.C, psi_images, name="phi'-phi")
        self.D, self.include_D, self._coords_D = kernel_subalgebra(self.P, self.psi, prefix="D")
        self.J = self._build_J()
        self.DJ, self.pi = quotient_cdga(self.D, self.J)
        self.A = model_A(n, k)
        self.xi = Morphism(self.A, self.D, self._xi_images(), name="xi")
        self.pi_xi = self.pi.compose(self.xi, name="pi*xi")
        (
            self.Ebar,
            self.Dbar,
            self.include_Dbar,
            self._coords_Dbar,
            self.dbar_listed,
        ) = self._build_Dbar()
        self.eta = Morphism(self.A, self.Dbar, self._eta_images(), name="eta")
        self.iota = self._make_iota()

    # -- building blocks -------------------------------------------------------

    def _b_word(self, I: Subset) -> int:
        return self.B.index(_label(tuple(f"a{i}" for i in sorted(I)) + ("b'",)))

    def _c_word(self, I: Subset, with_b: bool) -> int:
        return self.C.index(_label(tuple(f"a{i}" for i in sorted(I)) + (("b",) if with_b else ())))

    def _e_word(self, I: Subset, da: Optional[int] = None) -> int:
        w = tuple(f"a{i}" for i in sorted(I)) + ((f"da{da}",) if da else ())
        return self.E.index(_label(w) if w else "1")

    def _x_word(self, I: Subset) -> int:
        """The E' element da_{min I} a_{I minus min}, the image of a_I under d."""
        I = tuple(sorted(I))
        return self._e_word(I[1:], da=I[0])

    def _tensor(self, e_idx: int, b_idx: int) -> int:
        return self._tpos(e_idx, b_idx)

    def _make_phi(self) -> Morphism:
        images: list[Vec] = []
        for label in self.B.labels:
            if label == "1":
                images.append({self.C.index("1"): Fraction(1)})
            elif label == "c":
                images.append({})
            else:
                # rename the trailing b' to b, keeping the normalized word
                images.append({self.C.index(label[:-1]): Fraction(1)})
        return Morphism(self.B, self.C, images, name="phi")

    def _phi_e_images(self) -> list[Vec]:
        images: list[Vec] = []
        for p, label in enumerate(self.E.labels):
            if "da" in label:
                images.append({})
            else:
                images.append({self.C.index(label): Fraction(1)})
        return images

    def _make_phi_prime(self) -> Morphism:
        phi_e = self._phi_e_images()
        phi_b = self.phi.images
        images: list[Vec] = [None] * self.Bp.dim  # type: ignore[list-item]
        for e in range(self.E.dim):
            for b in range(self.B.dim):
                images[self._tensor(e, b)] = self.C.multiply(phi_e[e], phi_b[b])
        return Morphism(self.Bp, self.C, images, name="phi'")

    def _psi_images(self) -> list[Vec]:
        images: list[Vec] = []
        for label in self.P.labels:
            if label == "1":
                images.append({})
            elif label.startswith("L:"):
                images.append(dict(self.phi_prime.images[self.Bp.index(label[2:])]))
            else:
                images.append(vec_scale(self.phi.images[self.B.index(label[2:])], -1))
        return images

    def pack(self, left: Vec, right: Vec) -> Vec:
        """Element of the matched direct sum from (B'-part, B-part)."""
        return self._pack(left, right)

    def in_D(self, left: Vec, right: Vec) -> Vec:
        """Coordinates in D of a pair; raises if the pair is not in the kernel."""
        return self._coords_D(self.pack(left, right))

    # -- the ideal -------------------------------------------------------------

    def _j_generators(self) -> list[tuple[str, Vec]]:
        n, k = self.n, self.k
        full = tuple(range(1, k + 1))
        one_e = self.E.index("1")
        one_b = self.B.index("1")
        c_b = self.B.index("c")
        gens: list[tuple[str, Vec]] = []
        gens.append(("(c,c)", self.pack({self._tensor(one_e, c_b): Fraction(1)}, {c_b: Fraction(1)})))
        gens.append(
            (
                "(a_full (x) b', a_full b')",
                self.pack(
                    {self._tensor(self._e_word(full), self._b_word(())): Fraction(1)},
                    {self._b_word(full): Fraction(1)},
                ),
            )
        )
        subsets = _subsets(k, nonempty=True)
        diffs: list[Vec] = []
        for I in subsets:
            others = tuple(i for i in range(1, k + 1) if i not in I)
            for J in self._subsets_of(others):
                union = tuple(sorted(I + J))
                eps = _shuffle_sign(I, J)
                rest = tuple(i for i in range(1, k + 1) if i not in union)
                if rest and min(rest) > min(I):
                    # diagonal form: its leading-term products with the da
                    # elements vanish, keeping the closure inside the span
                    diff = self.pack(
                        {self._tensor(self._e_word(I), self._b_word(J)): Fraction(1)},
                        {self._b_word(union): Fraction(eps)},
                    )
                else:
                    # difference form: the two leading-term products survive
                    # together and their stray top-class parts cancel
                    diff = self.pack(
                        {
                            self._tensor(self._e_word(I), self._b_word(J)): Fraction(1),
                            self._tensor(one_e, self._b_word(union)): Fraction(-eps),
                        },
                        {},
                    )
                diffs.append(diff)
                gens.append((f"diff{I}|{J}", diff))
        for diff in diffs:
            img = self.P.d(diff)
            if img:
                gens.append(("d(diff)", img))
        for I in subsets:
            for J in subsets:
                if set(I) & set(J):
                    gens.append(
                        (
                            f"xw{I}|{J}",
                            self.pack({self._tensor(self._x_word(I), self._b_word(J)): Fraction(1)}, {}),
                        )
                    )
                    gens.append(
                        (
                            f"aw{I}|{J}",
                            self.pack({self._tensor(self._e_word(I), self._b_word(J)): Fraction(1)}, {}),
                        )
                    )
        for I in subsets:
            gens.append(
                ("xc", self.pack({self._tensor(self._x_word(I), c_b): Fraction(1)}, {}))
            )
            gens.append(
                ("ac", self.pack({self._tensor(self._e_word(I), c_b): Fraction(1)}, {}))
            )
        return gens

    @staticmethod
    def _subsets_of(pool: Subset) -> list[Subset]:
        out: list[Subset] = []
        for size in range(len(pool) + 1):
            out.extend(combinations(sorted(pool), size))
        return out

    def _build_J(self) -> IdealBasis:
        gens = [self._coords_D(vec) for _, vec in self._j_generators()]
        self.j_listed_count = len(gens)
        probe = IdealBasis(self.D)
        for g in gens:
            probe._add(dict(g))
        self.j_listed_dim = probe.dimension()
        return ideal_closure(self.D, gens)

    # -- xi, eta, Dbar ----------------------------------------------------------

    def _xi_images(self) -> list[Vec]:
        k = self.k
        one_e = self.E.index("1")
        c_b = self.B.index("c")
        images: list[Vec] = []
        for label in self.A.labels:
            if label == "1":
                images.append(self.D.basis_vec(self.D.unit))
            elif label == "mu":
                images.append(self.in_D({}, {c_b: Fraction(1)}))
            elif label.startswith("u"):
                I = tuple(int(ch) for ch in label[1:])
                images.append(self.in_D({self._tensor(self._x_word(I), self.B.index("1")): Fraction(1)}, {}))
            else:
                I = tuple(int(ch) for ch in label[1:])
                comp = tuple(i for i in range(1, k + 1) if i not in I)
                eps = _shuffle_sign(I, comp)
                w = self._b_word(comp)
                images.append(
                    vec_scale(
                        self.in_D({self._tensor(one_e, w): Fraction(1)}, {w: Fraction(1)}), eps
                    )
                )
        return images

    def _build_Dbar(self):
        Ebar, pack_e = augmented_product(self.E, self.B)
        phibar_images: list[Vec] = []
        phi_e = self._phi_e_images()
        for label in Ebar.labels:
            if label == "1":
                phibar_images.append({self.C.index("1"): Fraction(1)})
            elif label.startswith("L:"):
                phibar_images.append(dict(phi_e[self.E.index(label[2:])]))
            else:
                phibar_images.append(dict(self.phi.images[self.B.index(label[2:])]))
        P3, pack3 = augmented_product(Ebar, self.B)
        psi_images: list[Vec] = []
        for label in P3.labels:
            if label == "1":
                psi_images.append({})
            elif label.startswith("L:"):
                psi_images.append(dict(phibar_images[Ebar.index(label[2:])]))
            else:
                psi_images.append(vec_scale(self.phi.images[self.B.index(label[2:])], -1))
        psi3 = Morphism(P3, self.C, psi_images, name="phibar-phi")
        Dbar, include, coords = kernel_subcomplex(P3, psi3, prefix="Db")

        def triple(e: Vec, b1: Vec, b2: Vec) -> Vec:
            return pack3(pack_e(e, b1), b2)

        one_e = {self.E.index("1"): Fraction(1)}
        one_b = {self.B.index("1"): Fraction(1)}
        c_b = self.B.index("c")
        listed: list[Vec] = [triple(one_e, one_b, one_b)]
        for I in _subsets(self.k, nonempty=True):
            listed.append(triple({self._x_word(I): Fraction(1)}, {}, {}))
        listed.append(triple({}, {c_b: Fraction(1)}, {}))
        listed.append(triple({}, {}, {c_b: Fraction(1)}))
        for I in _subsets(self.k):
            w = {self._b_word(I): Fraction(1)}
            listed.append(triple({}, w, w))
        self._pack3 = pack3
        self._pack_e = pack_e
        return Ebar, Dbar, include, coords, listed

    def _eta_images(self) -> list[Vec]:
        k = self.k
        c_b = self.B.index("c")
        images: list[Vec] = []
        for label in self.A.labels:
            if label == "1":
                e = {self.E.index("1"): Fraction(1)}
                b = {self.B.index("1"): Fraction(1)}
                images.append(self._coords_Dbar(self._pack3(self._pack_e(e, b), b)))
            elif label == "mu":
                images.append(self._coords_Dbar(self._pack3(self._pack_e({}, {}), {c_b: Fraction(1)})))
            elif label.startswith("u"):
                I = tuple(int(ch) for ch in label[1:])
                images.append(
                    self._coords_Dbar(self._pack3(self._pack_e({self._x_word(I): Fraction(1)}, {}), {}))
                )
            else:
                I = tuple(int(ch) for ch in label[1:])
                comp = tuple(i for i in range(1, k + 1) if i not in I)
                eps = _shuffle_sign(I, comp)
                w = {self._b_word(comp): Fraction(1)}
                images.append(
                    vec_scale(self._coords_Dbar(self._pack3(self._pack_e({}, w), w)), eps)
                )
        return images

    def _make_iota(self) -> Morphism:
        """Inclusion of Dbar into D through the natural map of the factors."""
        one_b_bp = self._tensor(self.E.index("1"), self.B.index("1"))
        m_images: list[Vec] = []
        P3 = self.include_Dbar.target
        for label in P3.labels:
            if label == "1":
                m_images.append(self.P.basis_vec(0))
            elif label.startswith("L:L:"):
                e = self.E.index(label[4:])
                m_images.append(self.pack({self._tensor(e, self.B.index("1")): Fraction(1)}, {}))
            elif label.startswith("L:R:"):
                b = self.B.index(label[4:])
                m_images.append(self.pack({self._tensor(self.E.index("1"), b): Fraction(1)}, {}))
            else:
                b = self.B.index(label[2:])
                m_images.append(self.pack({}, {b: Fraction(1)}))
        m = Morphism(P3, self.P, m_images, name="m")
        images = [self._coords_D(m.apply(img)) for img in self.include_Dbar.images]
        return Morphism(self.Dbar, self.D, images, name="iota")

    # -- checks ------------------------------------------------------------------

    def expected_betti(self) -> BettiVector:
        return conn_sum_betti_mv(self.n, self.k)

    def check(self, names: Iterable[str]) -> dict[str, CheckResult]:
        table: dict[str, Callable[[], CheckResult]] = {
            "axioms": self.check_axioms,
            "models": self.check_models,
            "pullback": self.check_pullback,
            "ideal": self.check_ideal,
            "quotient": self.check_quotient,
            "pi-xi": self.check_pi_xi,
            "eta": self.check_eta,
        }
        out: dict[str, CheckResult] = {}
        for name in names:
            if name not in table:
                raise ValueError(f"unknown check {name!r}")
            out[name] = table[name]()
        return out

    def check_axioms(self) -> CheckResult:
        bad: list[str] = []
        for name, alg in (
            ("C", self.C),
            ("B", self.B),
            ("E'", self.E),
            ("B'", self.Bp),
            ("D", self.D),
            ("D/J", self.DJ),
            ("A", self.A),
        ):
            v = alg.axiom_violations(max_reports=3)
            bad.extend(f"{name}: {msg}" for msg in v)
        if bad:
            return CheckResult(False, "; ".join(bad))
        return CheckResult(True, "d^2, Leibniz, commutativity, associativity, unit hold in C, B, E', B', D, D/J, A")

    def check_models(self) -> CheckResult:
        n, k = self.n, self.k
        problems: list[str] = []
        want_c: dict[int, int] = {}
        tb = dict(torus_betti(k).items)
        for dt, rt in tb.items():
            for ds in (0, 2 * n - k - 1):
                want_c[dt + ds] = want_c.get(dt + ds, 0) + rt
        if dict(self.C.betti().items) != {d: r for d, r in want_c.items() if r}:
            problems.append("H(C) does not match torus x sphere")
        want_b: dict[int, int] = {0: 1}
        for d, r in orbit_complement_wedge(n, k).reduced_ranks().items():
            want_b[d] = want_b.get(d, 0) + r
        if dict(self.B.betti().items) != {d: r for d, r in want_b.items() if r}:
            problems.append("H(B) does not match the orbit-complement wedge")
        if dict(self.E.betti().items) != {0: 1}:
            problems.append("E' is not acyclic")
        if dict(self.Bp.betti().items) != dict(self.B.betti().items):
            problems.append("H(B') differs from H(B)")
        if dict(self.A.betti().items) != dict(self.expected_betti().items):
            problems.append("H(A) census disagrees with the Mayer-Vietoris ranks")
        if not self.phi.check_chain_map() or not self.phi.check_algebra_map():
            problems.append("phi is not a CDGA map")
        if not self.phi_prime.check_chain_map() or not self.phi_prime.check_algebra_map():
            problems.append("phi' is not a CDGA map")
        if not self.phi_prime.check_surjective():
            problems.append("phi' is not surjective")
        if problems:
            return CheckResult(False, "; ".join(problems))
        return CheckResult(
            True,
            f"H(C), H(B), H(E'), H(B'), H(A) as expected; phi and phi' verified, phi' onto (dim B' = {self.Bp.dim})",
        )

    def check_pullback(self) -> CheckResult:
        problems: list[str] = []
        one_e = self.E.index("1")
        c_b = self.B.index("c")
        try:
            self.in_D({self._tensor(one_e, c_b): Fraction(1)}, {})
            self.in_D({}, {c_b: Fraction(1)})
            for I in _subsets(self.k, nonempty=True):
                self.in_D({self._tensor(self._x_word(I), self.B.index("1")): Fraction(1)}, {})
                self.in_D(
                    {self._tensor(self._e_word(I), self._b_word(())): Fraction(1)},
                    {self._b_word(I): Fraction(1)},
                )
            for I in _subsets(self.k):
                w = self._b_word(I)
                self.in_D({self._tensor(one_e, w): Fraction(1)}, {w: Fraction(1)})
        except ValueError as exc:
            problems.append(f"membership failure: {exc}")
        if dict(self.D.betti().items) != dict(self.expected_betti().items):
            problems.append("H(D) disagrees with the Mayer-Vietoris ranks")
        expected_dim = 2 * 4**self.k + 2 ** (self.k + 1)
        if self.D.dim != expected_dim:
            problems.append(f"dim D = {self.D.dim}, expected {expected_dim}")
        if problems:
            return CheckResult(False, "; ".join(problems))
        return CheckResult(True, f"listed generators lie in D; H(D) = MV ranks; dim D = {self.D.dim}")

    def check_ideal(self) -> CheckResult:
        problems: list[str] = []
        if self.J.grew_beyond_generators:
            problems.append("ideal closure escaped the listed span")
        if self.J.dimension() != self.j_listed_dim:
            problems.append("closure dimension differs from the listed span")
        if not self.J.is_acyclic():
            problems.append("H(J) != 0")
        if self.D.dim - self.J.dimension() != self.A.dim:
            problems.append("codimension of J is not the dimension of A")
        ok_i, detail_i = _ideal_I_check(self.k)
        if not ok_i:
            problems.append(f"free-algebra ideal check failed: {detail_i}")
        if problems:
            return CheckResult(False, "; ".join(problems))
        return CheckResult(
            True,
            f"J = span of the listed elements (dim {self.J.dimension()}), H(J) = 0; {detail_i}",
        )

    def check_quotient(self) -> CheckResult:
        problems: list[str] = []
        if not self.pi.check_chain_map():
            problems.append("pi is not a chain map")
        if not self.pi.check_algebra_map():
            problems.append("pi is not an algebra map")
        if not self.pi.check_quasi_iso():
            problems.append("pi is not a quasi-isomorphism")
        if dict(self.DJ.betti().items) != dict(self.expected_betti().items):
            problems.append("H(D/J) disagrees with the Mayer-Vietoris ranks")
        if problems:
            return CheckResult(False, "; ".join(problems))
        return CheckResult(True, f"pi: D -> D/J is a CDGA quasi-isomorphism (dim D/J = {self.DJ.dim})")

    def check_pi_xi(self) -> CheckResult:
        problems: list[str] = []
        if not self.xi.check_chain_map():
            problems.append("xi is not a chain map")
        if not self.pi_xi.check_chain_map():
            problems.append("pi xi is not a chain map")
        if not self.pi_xi.check_algebra_map():
            problems.append("pi xi is not an algebra map")
        if not self.pi_xi.check_quasi_iso():
            problems.append("pi xi is not a quasi-isomorphism")
        mu = self.A.index("mu")
        for I in _subsets(self.k, nonempty=True):
            pu = self.A.index("u" + "".join(map(str, I)))
            pv = self.A.index("v" + "".join(map(str, I)))
            lhs = self.DJ.multiply(self.pi_xi.images[pu], self.pi_xi.images[pv])
            rhs = vec_scale(self.pi_xi.images[mu], -1)
            if not vec_eq(lhs, rhs):
                problems.append(f"pairing of u{I}, v{I} does not hit -mu")
        if problems:
            return CheckResult(False, "; ".join(problems))
        return CheckResult(True, "pi xi: A -> D/J is a CDGA quasi-isomorphism with the -mu pairing")

    def check_eta(self) -> CheckResult:
        problems: list[str] = []
        try:
            coords = [self._coords_Dbar(v) for v in self.dbar_listed]
        except ValueError as exc:
            coords = []
            problems.append(f"listed element outside Dbar: {exc}")
        if coords:
            solver = LinearSolver(self.Dbar.dim)
            added = sum(
                1
                for c in coords
                if solver.add([c.get(i, Fraction(0)) for i in range(self.Dbar.dim)])
            )
            if added != len(coords):
                problems.append("listed Dbar elements are dependent")
            if added != self.Dbar.dim:
                problems.append(
                    f"listed elements span {added} of {self.Dbar.dim} dimensions of Dbar"
                )
        top = [i for i, d in enumerate(self.Dbar.degrees) if d == 2 * self.n]
        if len(top) != 2:
            problems.append("Dbar is not two-dimensional in the top degree")
        if not self.eta.check_chain_map():
            problems.append("eta is not a chain map")
        if not self.eta.check_injective():
            problems.append("eta is not injective")
        if not self.iota.check_chain_map():
            problems.append("iota is not a chain map")
        if not self.iota.check_quasi_iso():
            problems.append("iota: Dbar -> D is not a quasi-isomorphism")
        for p in range(self.A.dim):
            if not vec_eq(self.iota.apply(self.eta.images[p]), self.xi.images[p]):
                problems.append(f"xi does not factor as iota eta at {self.A.labels[p]}")
                break
        if dict(self.Dbar.betti().items) != dict(self.A.betti().items):
            problems.append("H(Dbar) differs from H(A)")
        if problems:
            return CheckResult(False, "; ".join(problems))
        return CheckResult(
            True,
            f"Dbar basis as listed (dim {self.Dbar.dim}); eta injective chain map; iota a quasi-isomorphism; xi = iota eta",
        )

    def check_all(self) -> dict[str, CheckResult]:
        return self.check(["axioms", "models", "pullback", "ideal", "quotient", "pi-xi", "eta"])


def _ideal_I_check(k: int, max_degree: Optional[int] = None) -> tuple[bool, str]:
    """Truncated check that the monomial ideal of the free algebra on a_i,
    da_i is acyclic and leaves exactly the normal forms of E'.

    Monomials are (subset of a's, multiset of da's); the ideal is spanned by
    those with at least two da's, or one da_s and some a-index <= s.
    """
    if max_degree is None:
        max_degree = 2 * k + 3
    monos: list[tuple[Subset, tuple[int, ...]]] = []

    def grow(base: tuple[int, ...], start: int, budget: int) -> None:
        monos_da.append(base)
        for i in range(start, k + 1):
            if budget >= 2:
                grow(base + (i,), i, budget - 2)

    by_key: dict[tuple[Subset, tuple[int, ...]], int] = {}
    for I in _subsets(k):
        monos_da: list[tuple[int, ...]] = []
        grow((), 1, max_degree + 1 - len(I))
        for das in monos_da:
            key = (I, tuple(sorted(das)))
            if key not in by_key and len(I) + 2 * len(das) <= max_degree + 1:
                by_key[key] = len(by_key)
                monos.append(key)

    def in_ideal(key: tuple[Subset, tuple[int, ...]]) -> bool:
        I, das = key
        if len(das) >= 2:
            return True
        if len(das) == 1:
            return any(i <= das[0] for i in I)
        return False

    normal = [key for key in monos if not in_ideal(key)]
    expected_normal = set()
    for I in _subsets(k):
        if len(I) <= max_degree + 1:
            expected_normal.add((I, ()))
    for s in range(1, k + 1):
        for I in _subsets(k):
            if all(i > s for i in I) and len(I) + 2 <= max_degree + 1:
                expected_normal.add((I, (s,)))
    if set(normal) != expected_normal:
        return False, "normal forms do not match the E' basis"

    ideal = [key for key in monos if in_ideal(key)]
    ipos = {key: p for p, key in enumerate(ideal)}

    def d_mono(key: tuple[Subset, tuple[int, ...]]) -> dict[tuple[Subset, tuple[int, ...]], int]:
        I, das = key
        out: dict[tuple[Subset, tuple[int, ...]], int] = {}
        for j, i in enumerate(I):
            rest = tuple(x for x in I if x != i)
            tgt = (rest, tuple(sorted(das + (i,))))
            out[tgt] = out.get(tgt, 0) + (-1) ** j
        return {t: c for t, c in out.items() if c}

    degree = lambda key: len(key[0]) + 2 * len(key[1])
    for key in ideal:
        for tgt in d_mono(key):
            if degree(tgt) <= max_degree + 1 and not in_ideal(tgt):
                return False, "ideal is not closed under d"
    by_deg: dict[int, list[tuple[Subset, tuple[int, ...]]]] = {}
    for key in ideal:
        by_deg.setdefault(degree(key), []).append(key)
    ranks: dict[int, int] = {}
    for deg, keys in by_deg.items():
        if deg + 1 > max_degree + 1:
            continue
        nxt = by_deg.get(deg + 1, [])
        npos = {key: p for p, key in enumerate(nxt)}
        rows = []
        for key in keys:
            row = [Fraction(0)] * len(nxt)
            for tgt, c in d_mono(key).items():
                if tgt in npos:
                    row[npos[tgt]] = Fraction(c)
            rows.append(row)
        ranks[deg] = matrix_rank(rows) if rows else 0
    for deg in sorted(by_deg):
        if deg > max_degree:
            continue
        h = len(by_deg[deg]) - ranks.get(deg, 0) - ranks.get(deg - 1, 0)
        if h != 0:
            return False, f"H^{deg}(ideal) has rank {h}"
    return True, f"monomial ideal acyclic and complementary to E' through degree {max_degree}"


@lru_cache(maxsize=None)
def build_models(n: int, k: int) -> SphereSumModels:
    return SphereSumModels(n, k)


def phi(n: int, k: int) -> Morphism:
    return build_models(n, k).phi


def phi_prime(n: int, k: int) -> Morphism:
    return build_models(n, k).phi_prime


def build_J(n: int, k: int) -> IdealBasis:
    return build_models(n, k).J


def map_pi_xi(n: int, k: int) -> Morphism:
    """The verified quasi-isomorphism from the small model to D/J."""
    return build_models(n, k).pi_xi


def dbar_and_eta(n: int, k: int):
    """The module-level shadow of the pullback and the injection into it."""
    m = build_models(n, k)
    return m.Dbar, m.eta
