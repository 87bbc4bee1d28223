"""Lattices, simplicial index-1 cones, validated fans, dual generators,
and commutative monoid membership with bounded search.

Cones are purely combinatorial: a face is the sorted tuple of its ray
indices, the zero cone is the empty tuple.  Geometry is recomputed from the
ray vectors on demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (MissingReferenceCone, NoPositivityFunctional, NonPrimitiveRay,
                     NotAFan, NotIndexOne, NotMaximal)
from .exactmath import (int_det, int_inverse_unimodular, kernel_basis,
                        lattice_solve, linear_feasible)


def pairing(m, v):
    """Evaluation of a dual vector against a ray vector."""
    return sum(a * b for a, b in zip(m, v))


def is_primitive(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g == 1


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple
    faces: tuple
    pair_certificates: dict = field(compare=False, hash=False)

    def face_list(self):
        return list(self.faces)

    def is_maximal(self, cone):
        return cone in self.max_cones

    def cone_rays(self, cone):
        return [self.rays[i] for i in cone]

    def covering_max_cones(self, cone):
        s = set(cone)
        return [c for c in self.max_cones if s <= set(c)]

    def dim(self, cone):
        return len(cone)

    def incidence_pairs(self):
        """All (upper, lower) pairs with lower a proper face of upper."""
        out = []
        for upper in self.faces:
            us = set(upper)
            for lower in self.faces:
                if lower != upper and set(lower) < us:
                    out.append((upper, lower))
        return out

    def chains(self):
        """All (upper, middle, lower) chains of strictly nested faces."""
        out = []
        for (upper, mid) in self.incidence_pairs():
            ms = set(mid)
            for lower in self.faces:
                if lower != mid and set(lower) < ms:
                    out.append((upper, mid, lower))
        return out

    def to_raw(self):
        return {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "certificates": [
                {"pair": [list(a), list(b)], "functional": list(f)}
                for (a, b), f in sorted(self.pair_certificates.items())
            ],
        }


def _canon_cone(indices):
    return tuple(sorted(int(i) for i in indices))


def _all_faces(max_cones):
    faces = set()
    for cone in max_cones:
        n = len(cone)
        for mask in range(1 << n):
            faces.add(tuple(cone[i] for i in range(n) if mask >> i & 1))
    return tuple(sorted(faces, key=lambda c: (len(c), c)))


def _separating_functional(rank, rays_a, shared, rays_b):
    ineqs = []
    for v in rays_a:
        ineqs.append((tuple(Fraction(x) for x in v), Fraction(1), False))
    for v in rays_b:
        ineqs.append((tuple(Fraction(-x) for x in v), Fraction(1), False))
    for v in shared:
        ineqs.append((tuple(Fraction(x) for x in v), Fraction(0), False))
        ineqs.append((tuple(Fraction(-x) for x in v), Fraction(0), False))
    witness = linear_feasible(ineqs, rank)
    if witness is None:
        return None
    denom = 1
    for w in witness:
        denom = denom * w.denominator // gcd(denom, w.denominator)
    return tuple(int(w * denom) for w in witness)


def check_certificate(fan_rays, cone_a, cone_b, functional):
    shared = set(cone_a) & set(cone_b)
    for i in cone_a:
        p = pairing(functional, fan_rays[i])
        if i in shared:
            if p != 0:
                return False
        elif p <= 0:
            return False
    for i in cone_b:
        p = pairing(functional, fan_rays[i])
        if i in shared:
            if p != 0:
                return False
        elif p >= 0:
            return False
    return True


def validate_fan(rank, rays, max_cones, certificates=None):
    """Check every fan invariant and return the validated Fan.

    certificates, when given, maps unordered maximal-cone pairs to candidate
    separating functionals; they are verified and kept, with a feasibility
    search as fallback for missing pairs.
    """
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    for idx, r in enumerate(rays):
        if len(r) != rank:
            raise NonPrimitiveRay(f"ray {idx} has length {len(r)}, expected {rank}")
        if not is_primitive(r):
            raise NonPrimitiveRay(f"ray {idx} = {list(r)} is not primitive")
    cones = tuple(_canon_cone(c) for c in max_cones)
    seen = set()
    for cone in cones:
        if cone in seen:
            raise NotAFan(f"maximal cone {list(cone)} listed twice")
        seen.add(cone)
        if len(cone) != rank or len(set(cone)) != rank:
            raise NotIndexOne(f"maximal cone {list(cone)} does not have {rank} distinct rays")
        if any(i < 0 or i >= len(rays) for i in cone):
            raise NotAFan(f"maximal cone {list(cone)} references a missing ray")
        d = int_det([list(rays[i]) for i in cone])
        if abs(d) != 1:
            raise NotIndexOne(f"maximal cone {list(cone)} has index |det| = {abs(d)}")
    basis_indices = []
    for i in range(rank):
        e = tuple(int(j == i) for j in range(rank))
        if e not in rays:
            raise MissingReferenceCone(f"standard basis vector {list(e)} is not a ray")
        basis_indices.append(rays.index(e))
    if _canon_cone(basis_indices) not in cones:
        raise MissingReferenceCone(
            "the cone on the standard basis is not among the maximal cones")
    certs = {}
    supplied = dict(certificates or {})
    for ai in range(len(cones)):
        for bi in range(ai + 1, len(cones)):
            a, b = cones[ai], cones[bi]
            key = (a, b)
            shared = set(a) & set(b)
            if key in supplied:
                f = tuple(int(x) for x in supplied[key])
                if not check_certificate(rays, a, b, f):
                    raise NotAFan(
                        f"supplied certificate for cones {list(a)}, {list(b)} fails")
                certs[key] = f
                continue
            f = _separating_functional(
                rank,
                [rays[i] for i in a if i not in shared],
                [rays[i] for i in shared],
                [rays[i] for i in b if i not in shared],
            )
            if f is None:
                raise NotAFan(
                    f"cones {list(a)} and {list(b)} do not intersect in a common face")
            certs[key] = f
    return Fan(rank=rank, rays=rays, max_cones=cones,
               faces=_all_faces(cones), pair_certificates=certs)


def dual_generators(fan, sigma):
    """The dual basis of a maximal cone: u_i with <u_i, v_j> = delta_ij."""
    if not fan.is_maximal(sigma):
        raise NotMaximal(f"cone {list(sigma)} is not maximal")
    v = [list(fan.rays[i]) for i in sigma]
    vt = [[v[j][i] for j in range(len(v))] for i in range(fan.rank)]
    inv = int_inverse_unimodular(vt)
    return [tuple(inv[i]) for i in range(fan.rank)]


def cone_monoid_generators(fan, tau):
    """Generators of the dual monoid of a face, with flags marking the ones
    pairing to zero against every ray of the face.

    The zero cone additionally receives the negated standard basis so the
    returned set generates the full dual lattice as a group.
    """
    gens = []
    for sigma in fan.covering_max_cones(tau):
        for u in dual_generators(fan, sigma):
            if u not in gens:
                gens.append(u)
    if not tau:
        for i in range(fan.rank):
            e = tuple(-int(j == i) for j in range(fan.rank))
            if e not in gens:
                gens.append(e)
    tau_rays = fan.cone_rays(tau)
    flags = [all(pairing(g, v) == 0 for v in tau_rays) for g in gens]
    return gens, flags


def perp_lattice_basis(fan, tau):
    """Z-basis of the sublattice pairing to zero with every ray of the face."""
    rows = [list(fan.rays[i]) for i in tau]
    return [tuple(b) for b in kernel_basis(rows, fan.rank)]


def _unit_pair_indices(gens):
    idx = set()
    gset = {g: i for i, g in enumerate(gens)}
    for i, g in enumerate(gens):
        neg = tuple(-x for x in g)
        if neg in gset:
            idx.add(i)
    return sorted(idx)


def comm_monoid_member(gens, target, functional=None):
    """Nonnegative integer coefficients expressing the target over gens.

    Generators occurring together with their exact negatives are treated as
    a group part (solved by lattice algebra); the remaining generators are
    searched exhaustively under a strictly positive functional that bounds
    every coefficient.  Returns the coefficient list or None.
    """
    n = len(target)
    gens = [tuple(g) for g in gens]
    target = tuple(target)
    unit_idx = _unit_pair_indices(gens)
    unit_gens = [gens[i] for i in unit_idx]
    other_idx = [i for i in range(len(gens)) if i not in unit_idx]
    other = [gens[i] for i in other_idx]
    if other:
        if functional is None:
            ineqs = [(tuple(Fraction(x) for x in g), Fraction(1), False) for g in other]
            for b in unit_gens:
                ineqs.append((tuple(Fraction(x) for x in b), Fraction(0), False))
                ineqs.append((tuple(Fraction(-x) for x in b), Fraction(0), False))
            functional = linear_feasible(ineqs, n)
            if functional is None:
                raise NoPositivityFunctional(
                    "no functional is positive on the non-invertible generators")
        else:
            ok = (all(sum(Fraction(f) * x for f, x in zip(functional, g)) > 0 for g in other)
                  and all(sum(Fraction(f) * x for f, x in zip(functional, b)) == 0
                          for b in unit_gens))
            if not ok:
                raise NoPositivityFunctional("supplied functional does not bound the search")
    coeffs = [0] * len(gens)

    def lattice_part(residual):
        if not unit_gens:
            return [] if all(v == 0 for v in residual) else None
        return lattice_solve([list(g) for g in unit_gens], list(residual))

    def finish(partial, residual):
        sol = lattice_part(residual)
        if sol is None:
            return None
        out = list(partial)
        for k, c in enumerate(sol):
            gi = unit_idx[k]
            if c >= 0:
                out[gi] += c
            else:
                neg = tuple(-x for x in unit_gens[k])
                out[gens.index(neg)] += -c
        return out

    if not other:
        return finish(coeffs, target)

    budget = sum(Fraction(f) * t for f, t in zip(functional, target))
    values = [sum(Fraction(f) * g for f, g in zip(functional, go)) for go in other]

    def dfs(pos, residual, remaining):
        if pos == len(other):
            if remaining != 0:
                return None
            return finish(coeffs, residual)
        val = values[pos]
        max_c = int(remaining / val)
        for c in range(max_c + 1):
            coeffs[other_idx[pos]] = c
            new_res = tuple(r - c * g for r, g in zip(residual, other[pos]))
            got = dfs(pos + 1, new_res, remaining - c * val)
            if got is not None:
                return got
            coeffs[other_idx[pos]] = 0
        return None

    if budget < 0:
        return None
    return dfs(0, target, budget)
