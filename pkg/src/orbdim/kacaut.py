"""Kac's classification of finite-order automorphisms and its consequences.

A conjugacy class of order-n automorphisms of a simple algebra is a twist
k in {1,2,3} together with coprime non-negative node coordinates s on the
twisted affine diagram, with n = k * sum_i a_i s_i; the fixed subalgebra is
read off the subdiagram of nodes with s_i = 0 plus an abelian part.  Classes
are stored up to diagram automorphisms of the affine diagram, which is
conjugacy under the full automorphism group of the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .cartan import (
    AffineDiagram,
    Kind,
    admissible_twists,
    classical_dimension,
    diagram_automorphisms,
    kind_name,
    twisted_diagram,
    untwisted_diagram,
    validate_kind,
)
from .liealg import RootSystem, build_root_system


class UnknownDiagramShape(ValueError):
    pass


def classify_components(gcm, nodes) -> list[Kind]:
    """Connected components of a sub-GCM, classified as finite simple kinds."""
    nodes = list(nodes)
    remaining = set(nodes)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in remaining - comp:
                if gcm[i][j] != 0:
                    comp.add(j)
                    frontier.append(j)
        remaining -= comp
        comps.append(sorted(comp))
    return sorted(_classify_one(gcm, comp) for comp in comps)


def _classify_one(gcm, comp) -> Kind:
    r = len(comp)
    if r == 1:
        return ("A", 1)
    neighbours = {i: [j for j in comp if j != i and gcm[i][j] != 0] for i in comp}
    degrees = sorted(len(v) for v in neighbours.values())
    edges = [(i, j) for i in comp for j in comp if i < j and gcm[i][j] != 0]
    multiplicities = {e: gcm[e[0]][e[1]] * gcm[e[1]][e[0]] for e in edges}
    n_double = sum(1 for m in multiplicities.values() if m == 2)
    n_triple = sum(1 for m in multiplicities.values() if m == 3)
    if any(m > 3 for m in multiplicities.values()) or n_triple + n_double > 1:
        raise UnknownDiagramShape(f"component {comp} is not of finite type")
    if n_triple:
        if r != 2:
            raise UnknownDiagramShape(f"triple bond in a rank-{r} component")
        return ("G", 2)
    if degrees[-1] > 3 or sum(1 for d in degrees if d == 3) > 1:
        raise UnknownDiagramShape(f"component {comp} has an invalid branch structure")
    branch = next((i for i in comp if len(neighbours[i]) == 3), None)
    if branch is not None:
        if n_double:
            raise UnknownDiagramShape("branch node together with a double bond")
        lengths = []
        for start in neighbours[branch]:
            length, prev, cur = 1, branch, start
            while True:
                nxt = [j for j in neighbours[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            lengths.append(length)
        lengths.sort()
        if lengths[0] == 1 and lengths[1] == 1:
            return ("D", r)
        if lengths == [1, 2, 2]:
            return ("E", 6)
        if lengths == [1, 2, 3]:
            return ("E", 7)
        if lengths == [1, 2, 4]:
            return ("E", 8)
        raise UnknownDiagramShape(f"branch lengths {lengths} are not of finite type")
    # path: order it end to end
    ends = [i for i in comp if len(neighbours[i]) == 1]
    path = [ends[0]]
    while len(path) < r:
        nxt = [j for j in neighbours[path[-1]] if j not in path]
        path.append(nxt[0])
    if not n_double:
        return ("A", r)
    if r == 2:
        return ("B", 2)
    u, v = next(e for e, m in multiplicities.items() if m == 2)
    pos = sorted((path.index(u), path.index(v)))
    if pos == [1, 2] and r == 4:
        return ("F", 4)
    if pos[0] == 0 or pos[1] == r - 1:
        if pos[1] == r - 1:
            end, inner = path[-1], path[-2]
        else:
            path.reverse()
            end, inner = path[-1], path[-2]
        if gcm[inner][end] == -2:
            return ("B", r)       # short end node
        return ("C", r)           # long end node
    raise UnknownDiagramShape(f"double bond at interior position {pos} of a path")


@dataclass(frozen=True)
class KacClass:
    """One Aut-conjugacy class of finite-order automorphisms of a simple algebra."""

    diagram: AffineDiagram
    s: tuple[int, ...]
    order: int
    fixed_components: tuple[Kind, ...]
    fixed_abelian: int

    @property
    def base(self) -> Kind:
        return self.diagram.base

    @property
    def twist(self) -> int:
        return self.diagram.twist

    def is_inner(self) -> bool:
        return self.twist == 1

    def fixed_dimension(self) -> int:
        return sum(classical_dimension(k) for k in self.fixed_components) + self.fixed_abelian

    def fixed_rank(self) -> int:
        return sum(k[1] for k in self.fixed_components) + self.fixed_abelian

    def label(self) -> str:
        base = kind_name(self.base)
        fixed = " ".join(kind_name(k) for k in self.fixed_components) or "-"
        if self.fixed_abelian:
            fixed += f" C^{self.fixed_abelian}"
        return (f"{self.base[0]}_{self.base[1]}^({self.twist}); "
                f"s={list(self.s)}; order={self.order}; fixed={fixed}")


def _diagram(kind: Kind, k: int) -> AffineDiagram:
    return untwisted_diagram(kind) if k == 1 else twisted_diagram(kind, k)


@lru_cache(maxsize=None)
def _auto_orbit_reps(kind: Kind, k: int):
    d = _diagram(kind, k)
    return d, diagram_automorphisms(d)


def fixed_from_s(diagram: AffineDiagram, s) -> tuple[tuple[Kind, ...], int]:
    zero = [i for i in range(diagram.num_nodes) if s[i] == 0]
    comps = classify_components(diagram.gcm, zero)
    abelian = sum(1 for x in s if x) - 1
    return tuple(comps), abelian


@lru_cache(maxsize=None)
def enumerate_classes(kind: Kind, order: int) -> tuple[KacClass, ...]:
    """All conjugacy classes of order-n automorphisms of the simple algebra."""
    kind = validate_kind(kind)
    if order < 1:
        raise ValueError("the order must be a positive integer")
    out = []
    for k in admissible_twists(kind):
        if order % k:
            continue
        budget = order // k
        diagram, autos = _auto_orbit_reps(kind, k)
        labels = diagram.labels
        n = diagram.num_nodes
        seen = set()
        s = [0] * n

        def rec(i, left):
            if i == n:
                if left == 0 and gcd(*s) == 1:
                    canon = min(tuple(s[perm[j]] for j in range(n)) for perm in autos)
                    if canon not in seen:
                        seen.add(canon)
                        comps, ab = fixed_from_s(diagram, canon)
                        out.append(KacClass(diagram, canon, order, comps, ab))
                return
            step = labels[i]
            for v in range(left // step + 1):
                s[i] = v
                rec(i + 1, left - v * step)
            s[i] = 0

        rec(0, budget)
    return tuple(out)


def classes_of_order_dividing(kind: Kind, n: int) -> list[KacClass]:
    out = []
    for m in range(1, n + 1):
        if n % m == 0:
            out.extend(enumerate_classes(kind, m))
    return out


def inner_conjugacy_classes(*_args, **_kwargs):
    """Refinement of Kac coordinates to inner conjugacy is not implemented.

    The refinement needs a specific subgroup of the affine diagram
    automorphism group which the pipeline never requires; classes here are
    stored up to conjugacy in the full automorphism group.
    """
    raise NotImplementedError("inner-conjugacy refinement of Kac classes is not implemented")


# -- inner automorphisms from coweights ----------------------------------

def inner_from_coweight(rs: RootSystem, h):
    """Order and fixed subalgebra of exp(-2 pi i h_0) on the algebra.

    Returns (order, (components, abelian_rank), fixed_dimension).  The order
    is the lcm of the denominators of alpha(h) over the roots; the fixed
    subalgebra is the Cartan plus the root spaces with integral alpha(h).
    """
    h = tuple(Fraction(x) for x in h)
    order = 1
    fixed_roots = []
    for root in rs.roots:
        v = rs.root_on_coweight(root, h)
        order = lcm(order, v.denominator)
        if v.denominator == 1:
            fixed_roots.append(root)
    comps = _classify_root_subsystem(rs, fixed_roots)
    fixed_rank = sum(k[1] for k in comps)
    abelian = rs.rank - fixed_rank
    dim = rs.rank + len(fixed_roots)
    assert dim == sum(classical_dimension(k) for k in comps) + abelian
    return order, (tuple(comps), abelian), dim


def _classify_root_subsystem(rs: RootSystem, roots) -> list[Kind]:
    """Classify a closed root subsystem given by a list of ambient roots."""
    positive = [r for r in roots if RootSystem._is_positive(r)]
    if not positive:
        return []
    pos_set = set(positive)
    simple = []
    for beta in positive:
        if not any(tuple(b - g for b, g in zip(beta, gamma)) in pos_set
                   for gamma in positive if gamma != beta):
            simple.append(beta)
    r = len(simple)
    # Cartan matrix of the subsystem
    norms = [rs.root_pair_sq(b) for b in simple]
    gram = [[sum(Fraction(simple[i][a]) * rs.root_gram[a][b] * simple[j][b]
                 for a in range(rs.rank) for b in range(rs.rank)) for j in range(r)]
            for i in range(r)]
    C = []
    for i in range(r):
        row = []
        for j in range(r):
            entry = 2 * gram[i][j] / norms[j]
            assert entry.denominator == 1, "root subsystem pairing must be integral"
            row.append(int(entry))
        C.append(row)
    return classify_components(C, range(r))


def module_order_bound(rs: RootSystem, h) -> int:
    """Smallest k with k*h in the coroot lattice; bounds the order on modules."""
    coords = rs.coweight_to_coroot_coords(h)
    out = 1
    for x in coords:
        out = lcm(out, Fraction(x).denominator)
    return out


def coweight_to_kac_labels(rs: RootSystem, h):
    """Kac coordinates of the inner automorphism exp(-2 pi i h_0).

    Reduces h into the fundamental alcove with the affine Weyl group, then
    reads s_0 = n(1 - theta(h)), s_i = n alpha_i(h) for the algebra order n.
    """
    tilde, _ = alcove_point(rs, h)
    order, _, _ = inner_from_coweight(rs, h)
    theta_val = sum(Fraction(a) * c for a, c in zip(rs.marks, tilde))
    s = [order * (1 - theta_val)] + [order * c for c in tilde]
    assert all(x.denominator == 1 and x >= 0 for x in s)
    s = [int(x) for x in s]
    g = gcd(*s)
    return tuple(x // g for x in s) if g > 1 else tuple(s)


def alcove_point(rs: RootSystem, h):
    """Affine-Weyl reduction of h into the fundamental alcove.

    Returns (h_tilde, linear_word): h_tilde = w(h) + q with q in the coroot
    lattice and w the product of the reflections in linear_word, each entry
    either a simple index or "theta".
    """
    c = tuple(Fraction(x) for x in h)
    word = []
    theta_covec = tuple(sum(rs.comarks[i] * Fraction(rs.cartan[j][i]) for i in range(rs.rank))
                        for j in range(rs.rank))
    while True:
        moved = False
        for i in range(rs.rank):
            if c[i] < 0:
                c = rs.reflect_coweight(c, i)
                word.append(i)
                moved = True
                break
        if moved:
            continue
        t = sum(Fraction(a) * x for a, x in zip(rs.marks, c))
        if t > 1:
            # affine reflection in the wall theta = 1; linear part is s_theta
            c = tuple(x - (t - 1) * tv for x, tv in zip(c, theta_covec))
            word.append("theta")
            continue
        return c, word


def apply_inverse_linear(rs: RootSystem, word, c):
    """Apply w^{-1} for the recorded reflection word to a coweight."""
    theta_covec = tuple(sum(rs.comarks[i] * Fraction(rs.cartan[j][i]) for i in range(rs.rank))
                        for j in range(rs.rank))
    for op in reversed(word):
        if op == "theta":
            t = sum(Fraction(a) * x for a, x in zip(rs.marks, c))
            c = tuple(x - t * tv for x, tv in zip(c, theta_covec))
        else:
            c = rs.reflect_coweight(c, op)
    return c


# -- automorphisms of semisimple algebras --------------------------------

@dataclass(frozen=True)
class CyclePart:
    """A cyclic permutation of isomorphic factors with a residual class.

    indices are positions into the ambient factor list; the composite fixes
    a diagonal copy of the residual's fixed subalgebra and has order
    len(indices) * residual.order.
    """

    indices: tuple[int, ...]
    residual: KacClass


@dataclass(frozen=True)
class InnerPart:
    """A single factor acted on by exp(-2 pi i h_0) for a rational coweight h."""

    index: int
    h: tuple


@dataclass(frozen=True)
class SemisimpleAut:
    parts: tuple

    def order(self, kinds) -> int:
        total = 1
        for part in self.parts:
            if isinstance(part, CyclePart):
                total = lcm(total, len(part.indices) * part.residual.order)
            else:
                rs = build_root_system(kinds[part.index])
                total = lcm(total, inner_from_coweight(rs, part.h)[0])
        return total


def fixed_subalgebra_semisimple(aut: SemisimpleAut, kinds):
    """Fixed subalgebra of a semisimple automorphism: (components, abelian, dim).

    kinds is the list of simple factors (an affine structure is accepted and
    reduced to its factors); every factor index must be covered exactly once
    across the parts.
    """
    if hasattr(kinds, "kinds"):
        kinds = kinds.kinds()
    kinds = [validate_kind(tuple(k)) for k in kinds]
    covered = []
    comps: list[Kind] = []
    abelian = 0
    for part in aut.parts:
        if isinstance(part, CyclePart):
            cycle_kinds = {kinds[i] for i in part.indices}
            if len(cycle_kinds) != 1:
                raise ValueError("cycles must permute isomorphic factors")
            if part.residual.base not in cycle_kinds:
                raise ValueError("residual class acts on the wrong kind")
            covered.extend(part.indices)
            comps.extend(part.residual.fixed_components)
            abelian += part.residual.fixed_abelian
        else:
            covered.append(part.index)
            rs = build_root_system(kinds[part.index])
            _, (c, ab), _ = inner_from_coweight(rs, part.h)
            comps.extend(c)
            abelian += ab
    if sorted(covered) != list(range(len(kinds))):
        raise ValueError("automorphism parts must cover every factor exactly once")
    dim = sum(classical_dimension(k) for k in comps) + abelian
    return tuple(sorted(comps)), abelian, dim


def admits_fixed_subalgebra(kinds, target_components, target_abelian: int, n: int):
    """Is some automorphism of order dividing n with the given fixed algebra possible?

    kinds: simple factors of the ambient algebra; the target is a multiset of
    kinds plus an abelian rank.  Returns (found, witness) where the witness
    lists (kind, cycle_length, KacClass) choices.
    """
    kinds = [validate_kind(tuple(k)) for k in kinds]
    target = {}
    for k in target_components:
        k = validate_kind(tuple(k))
        target[k] = target.get(k, 0) + 1
    groups = {}
    for k in kinds:
        groups[k] = groups.get(k, 0) + 1
    group_list = sorted(groups.items())

    # options per kind: (cycle length p, class R) with p * order(R) dividing n
    def options(kind):
        opts = []
        for p in range(1, n + 1):
            if n % p:
                continue
            for r in range(1, n // p + 1):
                if (n // p) % r:
                    continue
                for cls in enumerate_classes(kind, r):
                    opts.append((p, cls))
        return opts

    witness = []

    def assign(gi, counter, ab_left):
        if gi == len(group_list):
            return not counter_total(counter) and ab_left == 0
        kind, count = group_list[gi]
        opts = [o for o in options(kind) if o[0] <= count]

        def fill(remaining, oi, counter, ab_left):
            if remaining == 0:
                return assign(gi + 1, counter, ab_left)
            if oi == len(opts):
                return False
            p, cls = opts[oi]
            # skip this option entirely
            if fill(remaining, oi + 1, counter, ab_left):
                return True
            # or take it (possibly repeatedly)
            if p <= remaining:
                new_counter = dict(counter)
                ok = True
                for k in cls.fixed_components:
                    if new_counter.get(k, 0) == 0:
                        ok = False
                        break
                    new_counter[k] -= 1
                    if new_counter[k] == 0:
                        del new_counter[k]
                new_ab = ab_left - cls.fixed_abelian
                if ok and new_ab >= 0:
                    witness.append((kind, p, cls))
                    if fill(remaining - p, oi, new_counter, new_ab):
                        return True
                    witness.pop()
            return False

        return fill(count, 0, counter, ab_left)

    def counter_total(counter):
        return sum(counter.values())

    found = assign(0, dict(target), int(target_abelian))
    return (True, list(witness)) if found else (False, None)
