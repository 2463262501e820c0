"""Polyhedral fans, normal fans, subdivisions, orbits, and the
combinatorial side of toric morphisms.

A fan is stored as a list of primitive ray vectors plus maximal cones
given as sorted tuples of 0-based ray indices. Faces are derived on
demand and never stored. Lattice maps are plain integer matrices
(lists of rows) mapping the source lattice into the target lattice.
"""

from __future__ import annotations

from . import cones as cn
from . import zlattice as zl


class Fan:
    """Validated fan. Construct through fan(); the constructor here
    trusts its arguments."""

    __slots__ = ("ambient_dim", "rays", "maximal_cones", "_max_objs", "_all")

    def __init__(self, ambient_dim, rays, maximal_cones, max_objs):
        self.ambient_dim = ambient_dim
        self.rays = rays
        self.maximal_cones = maximal_cones
        self._max_objs = max_objs
        self._all = None

    def max_cone(self, index) -> cn.Cone:
        return self._max_objs[index]

    def all_cones(self):
        """Every cone of the fan, as a dict: ray-index tuple -> Cone."""
        if self._all is None:
            out = {}
            for I, c in zip(self.maximal_cones, self._max_objs):
                for f in c.faces():
                    ixs = tuple(i for i in I if f.contains(self.rays[i]))
                    out.setdefault(ixs, f)
            self._all = out
        return self._all

    def cone_of(self, indices) -> cn.Cone:
        ixs = tuple(sorted(indices))
        try:
            return self.all_cones()[ixs]
        except KeyError:
            raise ValueError(f"ray indices {ixs} do not name a cone of the fan") from None

    def __eq__(self, other):
        if not isinstance(other, Fan) or self.ambient_dim != other.ambient_dim:
            return False
        if sorted(map(tuple, self.rays)) != sorted(map(tuple, other.rays)):
            return False
        mine = {frozenset(tuple(self.rays[i]) for i in I) for I in self.maximal_cones}
        theirs = {frozenset(tuple(other.rays[i]) for i in I) for I in other.maximal_cones}
        return mine == theirs

    __hash__ = None

    def __repr__(self):
        return (f"Fan[{self.ambient_dim}]({len(self.rays)} rays, "
                f"{len(self.maximal_cones)} maximal cones)")


def fan(rays, maximal_cones, ambient: int) -> Fan:
    """Build and validate a fan.

    Rays are primitivized and deduplicated (indices are remapped when
    that happens). Rejected inputs: zero rays, non-pointed cones, a
    listed generator that is not an extremal ray of its cone, unused
    rays, one maximal cone inside another, and a pair of cones whose
    intersection is not a common face. Pair errors name the
    lexicographically first offending pair, counting from 1.
    """
    n = ambient
    prim, remap = [], []
    for r in rays:
        r = [int(x) for x in r]
        if len(r) != n:
            raise ValueError("ray length does not match the ambient dimension")
        p = zl.primitive(r)
        if p in prim:
            remap.append(prim.index(p))
        else:
            remap.append(len(prim))
            prim.append(p)
    sets = []
    for I in maximal_cones:
        J = set()
        for i in I:
            i = int(i)
            if not 0 <= i < len(remap):
                raise ValueError(f"ray index {i} out of range")
            J.add(remap[i])
        J = tuple(sorted(J))
        if J not in sets:
            sets.append(J)
    if not sets:
        raise ValueError("a fan needs at least one cone")
    objs = []
    for k, J in enumerate(sets):
        c = cn.cone([prim[i] for i in J], n)
        if not c.is_pointed:
            raise ValueError(f"maximal cone {k + 1} is not pointed")
        if {tuple(r) for r in c.rays()} != {tuple(prim[i]) for i in J}:
            raise ValueError(f"maximal cone {k + 1} lists a non-extremal generator")
        objs.append(c)
    used = {i for J in sets for i in J}
    for i in range(len(prim)):
        if i not in used:
            raise ValueError(f"ray {i + 1} is not used by any maximal cone")
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            if objs[a].contains_cone(objs[b]) or objs[b].contains_cone(objs[a]):
                raise ValueError(
                    f"maximal cone {a + 1} and maximal cone {b + 1} are nested")
            tau = cn.intersect(objs[a], objs[b])
            if not (cn.is_face_of(tau, objs[a]) and cn.is_face_of(tau, objs[b])):
                raise ValueError(
                    f"maximal cones {a + 1} and {b + 1} do not intersect in a common face")
    return Fan(n, prim, sets, objs)


def normal_fan(P) -> Fan:
    """Fan of inward facet normals; maximal cones indexed by vertices.
    Requires a full-dimensional polytope."""
    if not P.is_full_dim:
        raise ValueError("normal fan requires a full-dimensional polytope")
    rays = [list(u) for u, _ in P.facets]
    maximal = []
    for v in P.vertices:
        maximal.append([i for i, (u, a) in enumerate(P.facets)
                        if zl.dot(u, v) + a == 0])
    return fan(rays, maximal, P.ambient_dim)


def is_smooth(F: Fan) -> bool:
    return all(c.is_smooth for c in F._max_objs)


def is_simplicial(F: Fan) -> bool:
    return all(c.is_simplicial for c in F._max_objs)


def is_complete(F: Fan) -> bool:
    """Exact combinatorial completeness test: the fan is pure of top
    dimension and every ridge lies in exactly two maximal cones."""
    n = F.ambient_dim
    if any(c.dim < n for c in F._max_objs):
        return False
    ridges = {}
    for I, c in zip(F.maximal_cones, F._max_objs):
        for f in c.faces():
            if f.dim == n - 1:
                ixs = tuple(i for i in I if f.contains(F.rays[i]))
                ridges.setdefault(ixs, f)
    for f in ridges.values():
        if sum(1 for c in F._max_objs if c.contains_cone(f)) != 2:
            return False
    return True


def star_subdivision(F: Fan, index: int) -> Fan:
    """Replace the smooth full-dimensional maximal cone at the given
    position by the cones through the sum of its rays."""
    sigma = F.max_cone(index)
    n = F.ambient_dim
    if sigma.dim != n or not sigma.is_smooth:
        raise ValueError("star subdivision needs a smooth full-dimensional cone")
    I = F.maximal_cones[index]
    u0 = [0] * n
    for i in I:
        u0 = zl.vadd(u0, F.rays[i])
    new_rays = [list(r) for r in F.rays] + [u0]
    star = len(F.rays)
    new_max = [list(J) for k, J in enumerate(F.maximal_cones) if k != index]
    for i in I:
        new_max.append([x for x in I if x != i] + [star])
    return fan(new_rays, new_max, n)


def product_fan(F1: Fan, F2: Fan) -> Fan:
    n1, n2 = F1.ambient_dim, F2.ambient_dim
    rays = [list(r) + [0] * n2 for r in F1.rays]
    rays += [[0] * n1 + list(s) for s in F2.rays]
    k = len(F1.rays)
    maximal = [list(I) + [k + j for j in J]
               for I in F1.maximal_cones for J in F2.maximal_cones]
    return fan(rays, maximal, n1 + n2)


def cone_containing_relint(F: Fan, u):
    """Ray-index tuple of the unique cone whose relative interior
    contains u, or None when u is outside the support."""
    for ixs in sorted(F.all_cones(), key=lambda I: (len(I), I)):
        if F.all_cones()[ixs].contains_in_relint(u):
            return ixs
    return None


def star_quotient_fan(F: Fan, tau):
    """Fan of the orbit closure: images of the cones containing tau in
    the quotient lattice, together with the projection matrix."""
    tau = tuple(sorted(tau))
    if tau not in F.all_cones():
        raise ValueError(f"ray indices {tau} do not name a cone of the fan")
    n = F.ambient_dim
    if not tau:
        return F, zl.identity(n)
    L = zl.span_lattice_basis([list(F.rays[i]) for i in tau], n)
    d = zl.shape(L)[1]
    _, P, _ = zl.snf(L)
    pi = [list(P[i]) for i in range(d, n)]
    if d == n:
        zero = cn.cone([], 0)
        return Fan(0, [], [()], [zero]), pi
    new_rays, new_max = [], []
    for I in F.maximal_cones:
        if not set(tau) <= set(I):
            continue
        img = cn.cone([zl.mat_vec(pi, F.rays[i]) for i in I], n - d)
        ixs = []
        for r in img.rays():
            if r not in new_rays:
                new_rays.append(r)
            ixs.append(new_rays.index(r))
        new_max.append(ixs)
    return fan(new_rays, new_max, n - d), pi


def orbit_table(F: Fan):
    """(ray indices, orbit dimension, closure) for every cone, ordered
    by cone dimension then indices. The closure list names the cones
    whose orbits appear in the closure of this cone's orbit, i.e. the
    cones containing it."""
    n = F.ambient_dim
    cones = F.all_cones()
    order = sorted(cones, key=lambda I: (cones[I].dim, I))
    table = []
    for I in order:
        closure = sorted((J for J in cones if set(I) <= set(J)),
                         key=lambda J: (cones[J].dim, J))
        table.append((I, n - cones[I].dim, closure))
    return table


def has_torus_factor(F: Fan) -> bool:
    if not F.rays:
        return F.ambient_dim > 0
    return zl.rank([list(r) for r in F.rays]) < F.ambient_dim


def _check_map(Fmat, src_dim, dst_dim):
    if len(Fmat) != dst_dim or any(len(row) != src_dim for row in Fmat):
        raise ValueError("lattice map shape does not match the ambient dimensions")


def is_compatible(Fmat, F1: Fan, F2: Fan) -> bool:
    """Every cone image F(sigma1) must land inside some cone of F2."""
    _check_map(Fmat, F1.ambient_dim, F2.ambient_dim)
    for c in F1._max_objs:
        img = [zl.mat_vec(Fmat, g) for g in c.generators]
        if not any(all(c2.contains(v) for v in img) for c2 in F2._max_objs):
            return False
    return True


def image_cone(Fmat, F2: Fan, sigma1: cn.Cone):
    """Ray-index tuple of the minimal cone of F2 containing the image
    of sigma1, or None when no cone contains it."""
    _check_map(Fmat, sigma1.ambient_dim, F2.ambient_dim)
    img = [zl.mat_vec(Fmat, g) for g in sigma1.generators]
    candidates = [I for I, c in F2.all_cones().items()
                  if all(c.contains(v) for v in img)]
    if not candidates:
        return None
    base = set(candidates[0])
    for I in candidates[1:]:
        base &= set(I)
    result = tuple(sorted(base))
    if result not in F2.all_cones():
        raise AssertionError("containing cones do not intersect in a fan cone")
    return result


def is_refinement(Fprime: Fan, F: Fan) -> bool:
    """Does every cone of Fprime sit inside a cone of F, with equal
    supports? Support equality is checked per maximal cone of F by
    ridge-pairing of the Fprime cones tiling it."""
    if Fprime.ambient_dim != F.ambient_dim:
        raise ValueError("ambient dimensions differ")
    for cp in Fprime._max_objs:
        if not any(c.contains_cone(cp) for c in F._max_objs):
            return False
    for c in F._max_objs:
        members = [m for m in Fprime._max_objs
                   if m.dim == c.dim and c.contains_cone(m)]
        if not members:
            return False
        for m in members:
            for f in m.faces():
                if f.dim != m.dim - 1:
                    continue
                x = [0] * F.ambient_dim
                for r in f.rays():
                    x = zl.vadd(x, r)
                expected = 2 if c.contains_in_relint(x) else 1
                if sum(1 for m2 in members if m2.contains_cone(f)) != expected:
                    return False
    return True


def chart_transition(F: Fan, index1: int, index2: int):
    """Gluing data between two maximal charts: the separating character
    m and, per dual semigroup generator h of the second cone, the
    exponent row writing chi^h as a Laurent monomial in the first
    chart's generators and chi^(-m) (last column)."""
    s1 = F.max_cone(index1)
    s2 = F.max_cone(index2)
    m = cn.separating_character(s1, s2)
    rows = []
    for h in cn.dual_semigroup_generators(s2):
        c = 0
        for g in s1.generators:
            mg = zl.dot(m, g)
            hg = zl.dot(h, g)
            if mg > 0 and hg < 0:
                c = max(c, (-hg + mg - 1) // mg)
        coeffs = cn.dual_semigroup_decompose(s1, zl.vadd(h, zl.vscale(c, m)))
        if coeffs is None:
            raise AssertionError("transition monomial escaped the source chart")
        rows.append(list(coeffs) + [c])
    return m, rows
