"""Combinatorial data of the simple Lie algebras and their weight theory.

Coordinates: weights are integer/rational vectors in the fundamental-weight
basis (lambda = sum m_i Lambda_i), Cartan elements in the fundamental-
coweight basis (h = sum c_i Lambda_i^vee).  Roots are kept in simple-root
coordinates, where pairing against a coweight is a plain dot product.  The
pairing of a weight against a coweight goes through the inverse Cartan
matrix: lambda(h) = m^T C^{-1} c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import (
    Kind,
    cartan_matrix,
    classical_dimension,
    comarks,
    coxeter,
    dual_coxeter,
    kind_name,
    marks,
    parse_kind,
    root_norms,
    validate_kind,
)

Vec = tuple[Fraction, ...]


def _frac_vec(values) -> Vec:
    return tuple(Fraction(v) for v in values)


def _mat_inverse(M):
    """Exact inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = Fraction(1) / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


class RootSystem:
    """All combinatorial data of one simple Lie algebra.

    Built once per kind and cached; treat instances as immutable.
    """

    def __init__(self, kind: Kind):
        kind = validate_kind(kind)
        self.kind = kind
        self.rank = kind[1]
        self.cartan = cartan_matrix(kind)          # C[i][j] = <a_i, a_j^vee>
        self.norms = root_norms(kind)
        self.marks = marks(kind)
        self.comarks = comarks(kind)
        self.coxeter = coxeter(kind)
        self.dual_coxeter = dual_coxeter(kind)
        self.dim = classical_dimension(kind)
        self.cartan_inv = _mat_inverse(self.cartan)
        l = self.rank
        # (Lambda_i, Lambda_j) = d_i/2 (C^{-1})_{ji};  (Lambda_i^v, Lambda_j^v) = (2/d_i)(C^{-1})_{ij}
        self.gram_weights = [[self.norms[i] / 2 * self.cartan_inv[j][i] for j in range(l)]
                             for i in range(l)]
        self.gram_coweights = [[2 / self.norms[i] * self.cartan_inv[i][j] for j in range(l)]
                               for i in range(l)]
        # (alpha_i, alpha_j) = C[i][j] d_j / 2
        self.root_gram = [[Fraction(self.cartan[i][j]) * self.norms[j] / 2 for j in range(l)]
                          for i in range(l)]
        self.roots = self._generate_roots()
        self.positive_roots = sorted(r for r in self.roots if self._is_positive(r))
        self._sanity()

    # -- construction ------------------------------------------------------

    def _generate_roots(self):
        l = self.rank
        simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for root in frontier:
                for i in range(l):
                    pairing = sum(root[j] * self.cartan[j][i] for j in range(l))
                    refl = list(root)
                    refl[i] -= pairing
                    t = tuple(refl)
                    if t not in seen:
                        seen.add(t)
                        new.append(t)
            frontier = new
        seen |= {tuple(-x for x in r) for r in seen}
        return sorted(seen)

    @staticmethod
    def _is_positive(root):
        for x in root:
            if x > 0:
                return True
            if x < 0:
                return False
        return False

    def _sanity(self):
        assert len(self.roots) == self.dim - self.rank, kind_name(self.kind)
        theta = tuple(self.marks)
        assert theta in self.roots
        assert self.root_pair_sq(theta) == 2
        assert self.coxeter == 1 + sum(self.marks)
        assert self.dual_coxeter == 1 + sum(self.comarks)

    # -- basic forms and conversions ---------------------------------------

    def root_pair_sq(self, root) -> Fraction:
        """(alpha, alpha) for a root in simple-root coordinates."""
        l = self.rank
        return sum(Fraction(root[i]) * self.root_gram[i][j] * root[j]
                   for i in range(l) for j in range(l))

    def root_to_weight_coords(self, root) -> tuple:
        """m_j = <alpha, alpha_j^vee>."""
        l = self.rank
        return tuple(sum(root[i] * self.cartan[i][j] for i in range(l)) for j in range(l))

    def root_on_coweight(self, root, h) -> Fraction:
        """alpha(h) for h in fundamental-coweight coordinates: a dot product."""
        return sum(Fraction(n) * Fraction(c) for n, c in zip(root, h))

    def pair_weight_coweight(self, m, c) -> Fraction:
        """lambda(h) = m^T C^{-1} c."""
        l = self.rank
        total = Fraction(0)
        for i in range(l):
            if m[i]:
                row = self.cartan_inv[i]
                total += Fraction(m[i]) * sum(row[j] * Fraction(c[j]) for j in range(l))
        return total

    def weight_form(self, m1, m2) -> Fraction:
        """(mu, nu) on the weight side."""
        l = self.rank
        total = Fraction(0)
        for i in range(l):
            if m1[i]:
                total += Fraction(m1[i]) * sum(self.gram_weights[i][j] * Fraction(m2[j])
                                               for j in range(l) if m2[j])
        return total

    def coweight_form(self, c1, c2) -> Fraction:
        """(h, h') on the coweight side."""
        l = self.rank
        total = Fraction(0)
        for i in range(l):
            if c1[i]:
                total += Fraction(c1[i]) * sum(self.gram_coweights[i][j] * Fraction(c2[j])
                                               for j in range(l) if c2[j])
        return total

    def coweight_to_coroot_coords(self, c) -> Vec:
        """Coordinates of h on the simple coroots: u = C^{-1} c."""
        l = self.rank
        return tuple(sum(self.cartan_inv[i][j] * Fraction(c[j]) for j in range(l))
                     for i in range(l))

    def in_coroot_lattice(self, c) -> bool:
        return all(x.denominator == 1 for x in self.coweight_to_coroot_coords(c))

    # -- Weyl group actions -------------------------------------------------

    def reflect_weight(self, m, i):
        mi = m[i]
        return tuple(Fraction(m[j]) - mi * self.cartan[i][j] for j in range(self.rank))

    def reflect_coweight(self, c, i):
        ci = Fraction(c[i])
        return tuple(Fraction(c[j]) - ci * self.cartan[j][i] for j in range(self.rank))

    def dominant_weight_conjugate(self, m):
        m = _frac_vec(m)
        while True:
            for i in range(self.rank):
                if m[i] < 0:
                    m = self.reflect_weight(m, i)
                    break
            else:
                return m

    def level(self, m) -> Fraction:
        return sum(Fraction(mi) * ci for mi, ci in zip(m, self.comarks))


@lru_cache(maxsize=None)
def build_root_system(kind: Kind) -> RootSystem:
    return RootSystem(kind)


def root_system(spec) -> RootSystem:
    """Accepts a (letter, rank) pair or a string like 'E6'."""
    if isinstance(spec, str):
        return build_root_system(parse_kind(spec))
    return build_root_system(validate_kind(tuple(spec)))


def weyl_antidominant(rs: RootSystem, h) -> tuple[Vec, list[int]]:
    """The antidominant chamber representative of h with the reflection word.

    Returns (h_minus, word) with every simple-root value of h_minus <= 0 and
    h_minus = s_{word[-1]} ... s_{word[0]} h.
    """
    c = _frac_vec(h)
    word: list[int] = []
    while True:
        for i in range(rs.rank):
            if c[i] > 0:
                c = rs.reflect_coweight(c, i)
                word.append(i)
                break
        else:
            return c, word


def dominant_weights_of_level(rs: RootSystem, k: int) -> list[tuple]:
    """All dominant integral weights of level at most k, lexicographic order."""
    if k < 0:
        raise ValueError("the level bound must be non-negative")
    out = []
    l = rs.rank
    m = [0] * l

    def rec(i, budget):
        if i == l:
            out.append(tuple(m))
            return
        step = rs.comarks[i]
        top = budget // step
        for v in range(top + 1):
            m[i] = v
            rec(i + 1, budget - v * step)
        m[i] = 0

    rec(0, k)
    return sorted(out)


def _check_dominant_integral(rs, m):
    for x in m:
        xf = Fraction(x)
        if xf.denominator != 1 or xf < 0:
            raise ValueError(f"weight {m} is not dominant integral")


def weyl_dimension(rs: RootSystem, m) -> int:
    """Weyl dimension formula, exact."""
    _check_dominant_integral(rs, m)
    delta = (1,) * rs.rank
    num = Fraction(1)
    den = Fraction(1)
    lam_delta = tuple(Fraction(x) + 1 for x in m)
    for root in rs.positive_roots:
        wroot = rs.root_to_weight_coords(root)
        num *= rs.weight_form(lam_delta, wroot)
        den *= rs.weight_form(delta, wroot)
    d = num / den
    assert d.denominator == 1
    return int(d)


@lru_cache(maxsize=None)
def _weight_system_cached(kind: Kind, m: tuple):
    rs = build_root_system(kind)
    return _weight_system(rs, m)


def weight_system(rs: RootSystem, m) -> dict[tuple, int]:
    """Weights of the irreducible module of highest weight m, with multiplicities."""
    m = tuple(int(x) for x in m)
    _check_dominant_integral(rs, m)
    return _weight_system_cached(rs.kind, m)


def _weight_system(rs: RootSystem, lam: tuple) -> dict[tuple, int]:
    l = rs.rank
    lam_v = _frac_vec(lam)
    # dominant weights mu <= lam: level is bounded by lam's, difference in Q+
    dominant = []
    for cand in dominant_weights_of_level(rs, int(rs.level(lam))):
        diff = tuple(Fraction(a) - b for a, b in zip(lam_v, cand))
        # simple-root coordinates of the difference: k_i = sum_j (C^{-1})_{ji} diff_j
        k = tuple(sum(rs.cartan_inv[j][i] * diff[j] for j in range(l)) for i in range(l))
        if all(x.denominator == 1 and x >= 0 for x in k):
            dominant.append((sum(k), cand))
    dominant.sort()
    mults: dict[tuple, int] = {}
    lam_delta = tuple(x + 1 for x in lam_v)
    norm_top = rs.weight_form(lam_delta, lam_delta)
    pos_w = [rs.root_to_weight_coords(r) for r in rs.positive_roots]
    for depth, mu in dominant:
        if depth == 0:
            mults[mu] = 1
            continue
        mu_delta = tuple(Fraction(x) + 1 for x in mu)
        denom = norm_top - rs.weight_form(mu_delta, mu_delta)
        acc = Fraction(0)
        for wroot in pos_w:
            # weights along mu + k alpha form a contiguous string, and their
            # dominant conjugates lie at strictly smaller depth, hence are
            # already in mults; the first miss ends the string.
            k = 1
            while True:
                shifted = tuple(a + k * b for a, b in zip(mu, wroot))
                dom = tuple(int(x) for x in rs.dominant_weight_conjugate(shifted))
                mult = mults.get(dom)
                if mult is None:
                    break
                acc += mult * rs.weight_form(shifted, wroot)
                k += 1
        val = 2 * acc / denom
        assert val.denominator == 1, "Freudenthal multiplicity must be integral"
        mults[mu] = int(val)
    # expand dominant multiplicities over the Weyl orbits
    full: dict[tuple, int] = {}
    for mu, mult in mults.items():
        for w in weyl_orbit(rs, mu):
            full[w] = mult
    return full


def weyl_orbit(rs: RootSystem, m) -> set[tuple]:
    """Orbit of a weight under the Weyl group (weight coordinates)."""
    start = tuple(int(x) for x in m)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for w in frontier:
            for i in range(rs.rank):
                if w[i] != 0:
                    r = tuple(int(x) for x in rs.reflect_weight(w, i))
                    if r not in seen:
                        seen.add(r)
                        new.append(r)
        frontier = new
    return seen


def affine_conformal_weight(rs: RootSystem, k: int, m) -> Fraction:
    """(lambda + 2 delta, lambda) / (2(k + h_vee)) for a level <= k weight."""
    _check_dominant_integral(rs, m)
    if rs.level(m) > k:
        raise ValueError(f"weight {tuple(m)} has level above {k}")
    lam = _frac_vec(m)
    two_delta = tuple(Fraction(2) for _ in range(rs.rank))
    shifted = tuple(a + b for a, b in zip(lam, two_delta))
    return rs.weight_form(shifted, lam) / (2 * (k + rs.dual_coxeter))


def min_weight_pairing(rs: RootSystem, m, h) -> Fraction:
    """min over the weight system of lambda = m of mu(h).

    Equals lambda evaluated at the antidominant Weyl conjugate of h, since
    the minimum over the weight polytope is attained on the extreme orbit.
    """
    h_minus, _ = weyl_antidominant(rs, h)
    return rs.pair_weight_coweight(m, h_minus)


@dataclass(frozen=True)
class AffineStructure:
    """Semisimple weight-one structure g_{1,k_1}...g_{r,k_r} plus abelian rank."""

    components: tuple[tuple[Kind, int], ...]
    abelian_rank: int = 0

    def __post_init__(self):
        comps = tuple((validate_kind(tuple(k)), int(level)) for k, level in self.components)
        for _, level in comps:
            if level <= 0:
                raise ValueError("levels must be positive integers")
        if self.abelian_rank < 0:
            raise ValueError("abelian rank must be non-negative")
        object.__setattr__(self, "components", comps)

    def dimension(self) -> int:
        return sum(classical_dimension(k) for k, _ in self.components) + self.abelian_rank

    def rank(self) -> int:
        return sum(k[1] for k, _ in self.components) + self.abelian_rank

    def kinds(self) -> list[Kind]:
        return [k for k, _ in self.components]

    def label(self) -> str:
        if not self.components and not self.abelian_rank:
            return "0"
        parts = [f"{kind_name(k)}" + (f",{level}" if level != 1 else "")
                 for k, level in self.components]
        if self.abelian_rank:
            parts.append(f"C^{self.abelian_rank}")
        return " ".join(parts)


def schellekens_constraint(structure: AffineStructure):
    """Check h_vee_i / k_i = (dim - 24)/24 across all simple components.

    Returns (holds, ratio) with ratio the common value when it holds.
    """
    if not structure.components:
        return (True, Fraction(structure.dimension() - 24, 24)) if structure.abelian_rank else (True, Fraction(0))
    target = Fraction(structure.dimension() - 24, 24)
    for kind, level in structure.components:
        if Fraction(dual_coxeter(kind), level) != target:
            return False, None
    return True, target
