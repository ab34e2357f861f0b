"""Compatibility and conformity of preorders with a submodular function,
the face and cone functions, the closure operator, face-lattice
enumeration, and gluing along a down-set.
"""

from __future__ import annotations

from . import caps
from .errors import ValidationError
from .ground import bit_indices, expand_mask, reindex_map
from .preorders import (
    DownSetFamily,
    Preorder,
    bubble_masks,
    component_masks,
    convex_masks,
    downset_masks,
    enumerate_total_preorders,
    from_relations,
    is_downset,
    preo_of,
    preorder_leq,
    restrict_preorder,
)
from .submod import SubmodFn, decompose
from .values import INF, ZERO


def pre_of(z: SubmodFn) -> Preorder:
    """The preorder whose down-sets are exactly the finite-valued subsets."""
    finite = [m for m in z.ground.subsets() if z.table[m].is_finite]
    return preo_of(DownSetFamily(z.ground, finite))


def cpre_of(z: SubmodFn) -> Preorder:
    """Totally disconnected preorder on the indecomposable blocks."""
    up = [0] * z.ground.n
    for block in decompose(z):
        for i in bit_indices(block):
            up[i] = block
    return Preorder(z.ground, up)


def low_of(P: Preorder) -> SubmodFn:
    """0 on down-sets of P, infinity elsewhere."""
    ds = set(downset_masks(P))
    table = [ZERO if m in ds else INF for m in P.ground.subsets()]
    return SubmodFn(P.ground, table)


def _same_ground(P, z):
    if P.ground != z.ground:
        raise ValidationError("preorder and function live on different ground sets")


def is_compatible(P: Preorder, z: SubmodFn) -> bool:
    _same_ground(P, z)
    ds = downset_masks(P)
    for m in ds:
        if not z.table[m].is_finite:
            return False
    t = z.table
    for b in ds:
        for a in ds:
            if a & ~b == 0 and a != b:
                c = b & ~a
                comps = component_masks(restrict_preorder(P, c))
                if len(comps) < 2:
                    continue
                globs = comps_global(P, c, comps)
                # every two-part disconnection must split the value exactly
                k = len(globs)
                for pick in range(1, 1 << (k - 1)):
                    c1 = 0
                    for j in range(k):
                        if pick >> j & 1:
                            c1 |= globs[j]
                    c2 = c & ~c1
                    if t[a | c1] + t[a | c2] != t[b] + t[a]:
                        return False
    return True


def comps_global(P: Preorder, c: int, comps):
    """Component masks of a restriction, mapped back to ambient bits."""
    pos = [i for i in range(P.ground.n) if c >> i & 1]
    return [expand_mask(cm, pos) for cm in comps]


def z_of_convex(z: SubmodFn, P: Preorder, c: int) -> SubmodFn:
    """The piece function on a convex set, via its canonical presentation
    (down-closure of the set and that minus the set)."""
    _same_ground(P, z)
    dn = opposite_rows(P)
    b = c
    for i in bit_indices(c):
        b |= dn[i]
    a = b & ~c
    if not is_downset(P, a):
        raise ValidationError("set is not convex in the preorder")
    za = z.table[a]
    if not za.is_finite:
        raise ValidationError("piece function needs finite value below the set")
    sub = z.ground.restricted(c)
    pos = reindex_map(z.ground, sub)
    table = [z.table[a | expand_mask(m, pos)] - za for m in range(1 << sub.n)]
    out = SubmodFn(sub, table)
    if __debug__:
        _check_presentation_free(z, P, c, out)
    return out


def _check_presentation_free(z, P, c, out):
    # any other down-set presentation must give the same table
    ds = downset_masks(P)
    sub = out.ground
    pos = reindex_map(z.ground, sub)
    for b in ds:
        a = b & ~c
        if b & ~a != c or a not in ds or not z.table[a].is_finite:
            continue
        for m in range(1 << sub.n):
            alt = z.table[a | expand_mask(m, pos)] - z.table[a]
            assert alt == out.table[m], "piece function depends on presentation"


def face_fn(z: SubmodFn, P: Preorder) -> SubmodFn:
    """Sum of the piece functions over the bubbles, as one table."""
    _same_ground(P, z)
    pieces = []
    for c in bubble_masks(P):
        zc = z_of_convex(z, P, c)
        pos = reindex_map(z.ground, zc.ground)
        pieces.append((c, zc, pos))
    table = []
    for m in z.ground.subsets():
        v = ZERO
        for c, zc, pos in pieces:
            local = 0
            for k, p in enumerate(pos):
                if m >> p & 1:
                    local |= 1 << k
            v = v + zc.table[local]
        table.append(v)
    return SubmodFn(z.ground, table)


def cone_fn(z: SubmodFn, P: Preorder) -> SubmodFn:
    """z on the down-sets of P, infinity elsewhere."""
    _same_ground(P, z)
    ds = set(downset_masks(P))
    for m in ds:
        if not z.table[m].is_finite:
            raise ValidationError("preorder has a down-set with infinite value")
    table = [z.table[m] if m in ds else INF for m in z.ground.subsets()]
    return SubmodFn(z.ground, table)


_CONFORM_TEST_CACHE = {}


def is_conforming(P: Preorder, z: SubmodFn) -> bool:
    _same_ground(P, z)
    key = (z, P)
    hit = _CONFORM_TEST_CACHE.get(key)
    if hit is not None:
        return hit
    result = _is_conforming(P, z)
    if len(_CONFORM_TEST_CACHE) > 65536:
        _CONFORM_TEST_CACHE.clear()
    _CONFORM_TEST_CACHE[key] = result
    return result


def _is_conforming(P: Preorder, z: SubmodFn) -> bool:
    if not is_compatible(P, z):
        return False
    for c in convex_masks(P):
        if c == 0:
            continue
        zc = z_of_convex(z, P, c)
        pos = reindex_map(z.ground, zc.ground)
        blocks = sorted(expand_mask(m, pos) for m in decompose(zc))
        comps = sorted(comps_global(P, c, component_masks(restrict_preorder(P, c))))
        if blocks != comps:
            return False
    return True


def closure(z: SubmodFn, P: Preorder) -> Preorder:
    """The conforming preorder of the face picked out by P.

    A set is open in the result when its value is finite, matches the
    sum of the bubble piece functions, and meets each bubble in a union
    of that bubble's indecomposable blocks.
    """
    _same_ground(P, z)
    pieces = []
    for c in bubble_masks(P):
        zc = z_of_convex(z, P, c)
        pos = reindex_map(z.ground, zc.ground)
        blocks = [expand_mask(m, pos) for m in decompose(zc)]
        pieces.append((c, zc, pos, blocks))
    opens = []
    for m in z.ground.subsets():
        if not z.table[m].is_finite:
            continue
        total = ZERO
        ok = True
        for c, zc, pos, blocks in pieces:
            inter = m & c
            for blk in blocks:
                if inter & blk not in (0, blk):
                    ok = False
                    break
            if not ok:
                break
            local = 0
            for k, p in enumerate(pos):
                if m >> p & 1:
                    local |= 1 << k
            total = total + zc.table[local]
        if ok and total == z.table[m]:
            opens.append(m)
    result = preo_of(DownSetFamily(z.ground, opens))
    if __debug__:
        assert preorder_leq(result, P), "closure must refine its input"
        assert is_conforming(result, z), "closure result must conform"
    return result


def opposite_rows(P: Preorder):
    return P.dn_rows()


class Face:
    __slots__ = ("z", "P", "dim", "fn")

    def __init__(self, z: SubmodFn, P: Preorder):
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "dim", z.ground.n - len(bubble_masks(P)))
        object.__setattr__(self, "fn", face_fn(z, P))

    def __setattr__(self, *a):
        raise AttributeError("Face is immutable")

    def __repr__(self):
        return f"Face(dim={self.dim}, {self.P!r})"


class FaceLattice:
    __slots__ = ("z", "faces", "order", "covers")

    def __init__(self, z: SubmodFn, faces, order, covers):
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "faces", tuple(faces))
        object.__setattr__(self, "order", tuple(order))
        object.__setattr__(self, "covers", tuple(covers))

    def __setattr__(self, *a):
        raise AttributeError("FaceLattice is immutable")

    def f_vector(self):
        """Face counts by dimension, lowest dimension first."""
        if not self.faces:
            return ()
        top = max(f.dim for f in self.faces)
        low = min(f.dim for f in self.faces)
        counts = [0] * (top - low + 1)
        for f in self.faces:
            counts[f.dim - low] += 1
        return tuple(counts)

    def preorder_set(self):
        return {f.P for f in self.faces}


_CONFORM_CACHE = {}


def conforming_preorders(z: SubmodFn, max_n=None):
    """All conforming preorders, as closures of compatible total preorders."""
    cap = caps.soft_cap(max_n)
    caps.check_enum(z.ground.n, min(cap, caps.TOTAL_PREORDER_ENUM_CAP), "face enumeration")
    cached = _CONFORM_CACHE.get(z)
    if cached is not None:
        return list(cached)
    seen = {}
    for L in enumerate_total_preorders(z.ground, max_n=z.ground.n):
        if not all(z.table[m].is_finite for m in downset_masks(L)):
            continue
        P = closure(z, L)
        seen[P.up] = P
    out = sorted(seen.values(), key=lambda p: p.up)
    if len(_CONFORM_CACHE) > 4096:
        _CONFORM_CACHE.clear()
    _CONFORM_CACHE[z] = tuple(out)
    return list(out)


def enumerate_faces(z: SubmodFn, max_n=None) -> FaceLattice:
    pres = conforming_preorders(z, max_n)
    faces = [Face(z, P) for P in pres]
    faces.sort(key=lambda f: (f.dim, f.P.up))
    order = []
    for i, fi in enumerate(faces):
        for j, fj in enumerate(faces):
            if i != j and preorder_leq(fi.P, fj.P):
                order.append((i, j))  # face i contained in face j
    oset = set(order)
    covers = []
    for i, j in order:
        if not any((i, k) in oset and (k, j) in oset for k in range(len(faces))):
            covers.append((i, j))
    return FaceLattice(z, faces, order, covers)


def min_faces(z: SubmodFn, max_n=None):
    """Faces whose preorders are minimal under refinement (smallest faces)."""
    pres = conforming_preorders(z, max_n)
    out = []
    for P in pres:
        if not any(Q != P and preorder_leq(Q, P) for Q in pres):
            out.append(Face(z, P))
    return out


def glue(z: SubmodFn, s_mask: int, P1: Preorder, P2: Preorder) -> Preorder:
    """The unique conforming preorder with the given down-set, restricting
    to the two given preorders on the down-set and its complement."""
    if not z.table[s_mask].is_finite:
        raise ValidationError("glue needs a finite value on the down-set")
    t_mask = z.ground.full & ~s_mask
    if set(P1.ground.labels) != set(z.ground.members(s_mask)):
        raise ValidationError("first preorder must live on the down-set")
    if set(P2.ground.labels) != set(z.ground.members(t_mask)):
        raise ValidationError("second preorder must live on the complement")
    pairs = []
    for Q in (P1, P2):
        for i in range(Q.ground.n):
            for j in bit_indices(Q.up[i]):
                pairs.append((Q.ground.labels[i], Q.ground.labels[j]))
    for a in z.ground.members(s_mask):
        for b in z.ground.members(t_mask):
            pairs.append((a, b))
    q0 = from_relations(z.ground, pairs)
    if not is_compatible(q0, z):
        raise ValidationError("stacked preorder is not compatible with the function")
    result = closure(z, q0)
    assert is_downset(result, s_mask), "glue lost the down-set"
    assert _relabeled_equal(restrict_preorder(result, s_mask), P1), "glue broke the lower part"
    assert _relabeled_equal(restrict_preorder(result, t_mask), P2), "glue broke the upper part"
    return result


def _relabeled_equal(P: Preorder, Q: Preorder) -> bool:
    return P.canonical_key() == Q.canonical_key()
