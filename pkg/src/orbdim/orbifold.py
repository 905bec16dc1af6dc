"""The genus-zero dimension relation and the twisted-module weight machinery.

Covers the closed-form orbifold dimension coefficients c_d, the low-order
coefficients d_{i,j,k} of the correction term R, type arithmetic for
finite-order automorphisms, cycle-shape bookkeeping for lattice
automorphisms, and the conformal-weight screening that isolates problematic
modules in the two hard uniqueness cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .liealg import (
    AffineStructure,
    RootSystem,
    affine_conformal_weight,
    build_root_system,
    dominant_weights_of_level,
    min_weight_pairing,
    weyl_antidominant,
)
from .kacaut import alcove_point, apply_inverse_linear
from .modcurve import GENUS_ZERO_LEVELS, dedekind_psi, divisors, euler_phi
from .qseries import EtaQuotient


class NotTabulatedError(KeyError):
    """A d_{i,j,k} outside the stated formulas and printed tables."""


def _liouville_lambda(d: int) -> int:
    """prod over primes p | d of (-p)."""
    out = 1
    p = 2
    m = d
    while p * p <= m:
        if m % p == 0:
            out *= -p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out *= -m
    return out


def c_coefficients(n: int) -> dict[int, Fraction]:
    """The closed-form coefficients of the genus-zero orbifold dimension formula.

    c_d = (lambda(d)/d) (phi((d,n/d))/(d,n/d)) psi(n/d); c_1 = psi(n) and the
    coefficients sum to n.
    """
    if n not in GENUS_ZERO_LEVELS:
        raise ValueError(f"{n} is not a genus-zero level")
    out = {}
    for d in divisors(n):
        g = gcd(d, n // d)
        out[d] = Fraction(_liouville_lambda(d), d) * Fraction(euler_phi(g), g) * dedekind_psi(n // d)
    assert out[1] == dedekind_psi(n)
    assert sum(out.values()) == n
    return out


@dataclass(frozen=True)
class DimProfile:
    """dim(V_1^{sigma^d}) for every divisor d of n; dims[n] is dim V_1."""

    n: int
    dims: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        missing = [d for d in divisors(self.n) if d not in self.dims]
        if missing:
            raise ValueError(f"profile is missing divisors {missing} of {self.n}")

    def restricted_to_power(self, d: int) -> "DimProfile":
        """The profile seen by sigma^d, an automorphism of order n/d."""
        m = self.n // d
        return DimProfile(m, {e: self.dims[d * e] for e in divisors(m)})


def dim_orbifold(profile: DimProfile) -> Fraction:
    """24 + sum_d c_d dim(V_1^{sigma^d}); rational on purpose, callers assert.

    The identity orbifold (n = 1) returns V_1 itself; the closed form with
    the additive 24 is the n >= 2 shape of the recursion.
    """
    if profile.n == 1:
        return Fraction(profile.dims[1])
    coeffs = c_coefficients(profile.n)
    return 24 + sum(coeffs[d] * profile.dims[d] for d in divisors(profile.n))


def sigma_divisors(m: int) -> int:
    return sum(d for d in divisors(m))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


# Residual d_{i,j,k} values: {(n, gcd(i,j,n)): (modulus, {ij mod modulus: value})}
_D_TABLES: dict[tuple[int, int], tuple[int, dict[int, int]]] = {
    (6, 2): (6, {2: 5, 4: 1}),
    (6, 3): (6, {3: 2}),
    (8, 2): (16, {4: 2, 12: 6}),
    (10, 2): (10, {2: 13, 4: 4, 6: 5, 8: 1}),
    (10, 5): (10, {5: 4}),
    (12, 2): (24, {4: 4, 8: 2, 16: 12, 20: 6}),
    (12, 3): (12, {3: 14, 6: 4, 9: 2}),
    (12, 4): (12, {4: 8, 8: 2}),
    (16, 2): (32, {4: 8, 8: 4, 12: 2, 20: 24, 24: 12, 28: 6}),
    (18, 2): (18, {2: 29, 4: 8, 6: 15, 8: 6, 10: 13, 12: 3, 14: 5, 16: 1}),
    (18, 3): (54, {9: 6, 27: 6, 45: 15}),
    (18, 9): (18, {9: 6}),
}


def d_coefficient(n: int, i: int, j: int, k: int) -> int:
    """The coefficient of dim W^{(i,j)}_{k/n} in the correction term R."""
    if n not in GENUS_ZERO_LEVELS:
        raise ValueError(f"{n} is not a genus-zero level")
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1 and 1 <= k <= n - 1):
        raise ValueError("i, j, k must lie in 1..n-1")
    if (i * j - k) % n:
        raise ValueError(f"k = {k} is not congruent to ij = {i * j} mod {n}")
    if _is_prime(n):
        return sigma_divisors(n - k)
    g = gcd(gcd(i, j), n)
    if g == 1:
        m = n - k
        return sum(m // d for d in divisors(m) if gcd(d, n) == 1)
    entry = _D_TABLES.get((n, g))
    if entry is None:
        raise NotTabulatedError(f"d_(i={i},j={j},k={k}) at level {n} is not tabulated")
    modulus, table = entry
    key = (i * j) % modulus
    if key not in table:
        raise NotTabulatedError(f"d_(i={i},j={j},k={k}) at level {n}: ij = {key} mod {modulus} untabulated")
    return table[key]


def all_tabulated_triples(n: int):
    """Every valid (i, j, k) at level n together with its coefficient."""
    out = {}
    for i in range(1, n):
        for j in range(1, n):
            k = (i * j) % n
            if k == 0:
                continue
            out[(i, j, k)] = d_coefficient(n, i, j, k)
    return out


def general_dimension_relation(profile: DimProfile, orb_dims: dict[int, Fraction],
                               low_terms: dict[tuple[int, int, int], int]):
    """Both sides of the genus-zero dimension relation, assembled exactly.

    lhs = sum over d | n of phi((d,n/d))/(d,n/d) (24 + (n/d) dims[1] - orb_dims[d]);
    rhs = 24 + R with R = (24/phi(n)) sum d_{i,j,k} low_terms[(i,j,k)].
    """
    n = profile.n
    if n not in GENUS_ZERO_LEVELS:
        raise ValueError(f"{n} is not a genus-zero level")
    lhs = Fraction(0)
    for d in divisors(n):
        g = gcd(d, n // d)
        if d not in orb_dims:
            raise ValueError(f"orbifold dimension for sigma^{d} missing")
        lhs += Fraction(euler_phi(g), g) * (24 + Fraction(n, d) * profile.dims[1] - orb_dims[d])
    R = Fraction(0)
    for (i, j, k), value in low_terms.items():
        R += d_coefficient(n, i, j, k) * Fraction(value)
    R *= Fraction(24, euler_phi(n)) if n > 1 else Fraction(24)
    rhs = 24 + R
    return {"lhs": lhs, "rhs": rhs, "balanced": lhs == rhs}


@dataclass(frozen=True)
class TwistType:
    n: int
    t: int

    def label(self) -> str:
        return f"{self.n}{{{self.t}}}"


def twist_type(n: int, rho) -> TwistType:
    """Type n{t} of an order-n automorphism with twisted-sector weight rho."""
    rho = Fraction(rho)
    scaled = rho * n * n
    if scaled.denominator != 1:
        raise ValueError(f"n^2 rho = {scaled} is not an integer")
    return TwistType(n, int(scaled) % n)


@dataclass(frozen=True)
class CycleShape:
    """prod t^{b_t}: the factored characteristic polynomial of a lattice isometry."""

    factors: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "factors",
                           {int(t): int(b) for t, b in self.factors.items() if b})
        if any(t <= 0 for t in self.factors):
            raise ValueError("cycle lengths must be positive")

    def degree(self) -> int:
        return sum(t * b for t, b in self.factors.items())

    def fixed_rank(self) -> int:
        return sum(self.factors.values())

    def order(self) -> int:
        out = 1
        for t in self.factors:
            out = lcm(out, t)
        return out

    def label(self) -> str:
        return " ".join(f"{t}^{b}" for t, b in sorted(self.factors.items()))


def vacuum_anomaly(shape: CycleShape) -> Fraction:
    """Twisted-sector vacuum weight (1/24) sum_t b_t (t - 1/t) for rank 24."""
    if shape.degree() != 24:
        raise ValueError(f"cycle shape degree {shape.degree()} != 24")
    return sum(Fraction(b) * (Fraction(t) - Fraction(1, t)) for t, b in shape.factors.items()) / 24


def cycle_shape_stats(shape: CycleShape):
    """Degree, fixed rank and the associated eta product."""
    eta = EtaQuotient(shape.order(), dict(shape.factors))
    return {"degree": shape.degree(), "fixedRank": shape.fixed_rank(), "etaProduct": eta}


def parse_cycle_shape(text: str) -> CycleShape:
    """Parse 't:b,t:b,...' or 't^b t^b' notation."""
    factors: dict[int, int] = {}
    chunks = text.replace("^", ":").replace(" ", ",").split(",")
    for chunk in chunks:
        if not chunk:
            continue
        t_str, b_str = chunk.split(":")
        factors[int(t_str)] = factors.get(int(t_str), 0) + int(b_str)
    return CycleShape(factors)


# -- alcove representatives and twisted conformal weights ----------------

def alcove_representative(rs: RootSystem, h):
    """A representative of h + Q^vee with |alpha(h')| <= 1 for all roots.

    Reduces into the fundamental alcove with the affine Weyl group, undoes
    the linear part, then walks downhill in norm along coroots; any local
    minimum of the norm on the coset satisfies the alcove condition.
    """
    tilde, word = alcove_point(rs, h)
    cur = apply_inverse_linear(rs, word, tilde)
    coroot_dirs = []
    l = rs.rank
    for root in rs.positive_roots:
        nn = rs.root_pair_sq(root)
        pair = [2 * sum(rs.root_gram[j][i] * root[i] for i in range(l)) / nn for j in range(l)]
        coroot_dirs.append(tuple(pair))
    improved = True
    norm = rs.coweight_form(cur, cur)
    while improved:
        improved = False
        for v in coroot_dirs:
            for sign in (1, -1):
                cand = tuple(c - sign * x for c, x in zip(cur, v))
                cn = rs.coweight_form(cand, cand)
                if cn < norm:
                    cur, norm = cand, cn
                    improved = True
    for root in rs.roots:
        assert abs(rs.root_on_coweight(root, cur)) <= 1
    return cur


def check_alcove_condition(rs: RootSystem, h) -> bool:
    return all(rs.root_on_coweight(r, h) >= -1 for r in rs.roots)


def twisted_module_weight(structure: AffineStructure, lambdas, hs) -> Fraction:
    """Conformal weight of the h-twisted version of the module with the given
    highest weights: rho(M) + sum_i min mu(h_i) + <h,h>/2.

    Every h_i must satisfy alpha(h_i) >= -1; callers with a general coset
    representative should pass it through alcove_representative first.
    """
    comps = structure.components
    if len(lambdas) != len(comps) or len(hs) != len(comps):
        raise ValueError("one weight and one Cartan element per simple factor")
    total = Fraction(0)
    hh = Fraction(0)
    for (kind, level), lam, h in zip(comps, lambdas, hs):
        rs = build_root_system(kind)
        if not check_alcove_condition(rs, h):
            raise ValueError(
                f"{kind} component violates alpha(h) >= -1; reduce with alcove_representative")
        total += affine_conformal_weight(rs, level, lam)
        total += min_weight_pairing(rs, lam, h)
        hh += level * rs.coweight_form(h, h)
    return total + hh / 2


def pairing_norm_bound(rs: RootSystem, level: int, h) -> Fraction:
    """max over dominant lambda of level <= k of -min mu(h): a corner of an LP."""
    h_minus, _ = weyl_antidominant(rs, h)
    best = Fraction(0)
    for j in range(rs.rank):
        unit = tuple(int(i == j) for i in range(rs.rank))
        v = -rs.pair_weight_coweight(unit, h_minus)
        best = max(best, v / rs.comarks[j])
    return level * best


def safe_rho_cap(structure: AffineStructure, hs, floor=1) -> int:
    """Smallest integer cap >= 3 such that modules with rho(M) > cap provably
    keep their twisted weight above the floor."""
    floor = Fraction(floor)
    hh = Fraction(0)
    bound = Fraction(0)
    for (kind, level), h in zip(structure.components, hs):
        rs = build_root_system(kind)
        hh += level * rs.coweight_form(h, h)
        bound += pairing_norm_bound(rs, level, h)
    need = floor - 1 + bound - hh / 2
    cap = max(3, -(-need.numerator // need.denominator))
    return int(cap)


def screen_problematic_modules(structure: AffineStructure, hs, floor=1, rho_cap=3):
    """Modules with integral conformal weight in [2, rho_cap] whose twisted
    weight drops below the floor.

    Returns a sorted list of (lambda_tuple, rho(M), rho(M^{(h)})).  Verifies
    first that the cap is safe: any module with rho(M) > rho_cap keeps
    rho(M^{(h)}) >= floor by the linear-programming bound on the min terms.
    """
    floor = Fraction(floor)
    comps = structure.components
    if len(hs) != len(comps):
        raise ValueError("one Cartan element per simple factor")
    factors = []
    hh = Fraction(0)
    bound = Fraction(0)
    for (kind, level), h in zip(comps, hs):
        rs = build_root_system(kind)
        if not check_alcove_condition(rs, h):
            raise ValueError(
                f"{kind} component violates alpha(h) >= -1; reduce with alcove_representative")
        h_minus, _ = weyl_antidominant(rs, h)
        lams = dominant_weights_of_level(rs, level)
        data = [(lam, affine_conformal_weight(rs, level, lam),
                 rs.pair_weight_coweight(lam, h_minus)) for lam in lams]
        factors.append(data)
        hh += level * rs.coweight_form(h, h)
        bound += pairing_norm_bound(rs, level, h)
    if Fraction(rho_cap) + 1 - bound + hh / 2 < floor:
        raise ValueError(
            f"rho cap {rho_cap} is not provably safe here (min-term bound {bound}, "
            f"<h,h>/2 = {hh / 2}); raise the cap")
    out = []

    def rec(idx, lam_acc, rho_acc, min_acc):
        if rho_acc > rho_cap:
            return
        if idx == len(factors):
            if rho_acc.denominator == 1 and rho_acc >= 2:
                twisted = rho_acc + min_acc + hh / 2
                if twisted < floor:
                    out.append((tuple(lam_acc), rho_acc, twisted))
            return
        for lam, rho, mn in factors[idx]:
            rec(idx + 1, lam_acc + [lam], rho_acc + rho, min_acc + mn)

    rec(0, [], Fraction(0), Fraction(0))
    out.sort(key=lambda rec: (rec[2], rec[0]))
    return out


def render_weight_tuple(lams) -> str:
    """Paper-style bracket rendering: ([m1,...],[m1,...],...)."""
    return "(" + ",".join("[" + ",".join(str(int(x)) for x in lam) + "]" for lam in lams) + ")"
