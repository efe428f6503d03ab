"""Exact rational polytopes and affine flats in the plane and in space.

Points are tuples of :class:`fractions.Fraction`. A :class:`QPolytope` is the
convex hull of its generators; its vertices are computed exactly. Every
geometric test works in the intrinsic coordinates of the generators' affine
hull, so lower-dimensional polytopes (points, segments, flat polygons in
space) need no special casing by callers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatch, PreconditionCNotInA

QPoint = tuple  # tuple[Fraction, ...]


def qpoint(*coords) -> QPoint:
    return tuple(Fraction(c) for c in coords)


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _scale(k, p):
    return tuple(k * a for a in p)


def _dot(p, q):
    return sum(a * b for a, b in zip(p, q))


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


# -- exact linear algebra ------------------------------------------------------


def _solve(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve ``sum_j x_j * columns[j] = rhs`` exactly.

    Returns ``(solution, unique)``; ``solution`` is ``None`` when the system is
    inconsistent, otherwise one particular solution (free variables zero).
    """
    rows = len(rhs)
    ncols = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(all(x == 0 for x in mat[i][:ncols]) and mat[i][ncols] != 0 for i in range(rows)):
        return None, False
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][ncols]
    return sol, len(pivots) == ncols


def _rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    return len(_independent(vectors))


def _independent(vectors):
    """Greedy maximal linearly independent sub-list."""
    basis = []
    reduced = []  # echelon rows paired with pivot column
    for v in vectors:
        w = list(v)
        for row, col in reduced:
            if w[col] != 0:
                f = w[col] / row[col]
                w = [a - f * b for a, b in zip(w, row)]
        col = next((i for i, a in enumerate(w) if a != 0), None)
        if col is not None:
            reduced.append((w, col))
            basis.append(tuple(v))
    return basis


# -- affine frames ---------------------------------------------------------------


@dataclass(frozen=True)
class _Frame:
    origin: QPoint
    basis: tuple  # linearly independent direction vectors

    def coords(self, x: QPoint):
        """Intrinsic coordinates of ``x``, or ``None`` if ``x`` is off the flat."""
        if not self.basis:
            return () if x == self.origin else None
        sol, _ = _solve(self.basis, _sub(x, self.origin))
        return None if sol is None else tuple(sol)

    def point(self, c) -> QPoint:
        out = self.origin
        for k, v in zip(c, self.basis):
            out = _add(out, _scale(k, v))
        return out


def _frame_of(points: Sequence[QPoint]) -> _Frame:
    origin = points[0]
    return _Frame(origin, tuple(_independent([_sub(p, origin) for p in points[1:]])))


def _hull_2d(pts):
    """Strictly convex hull in counter-clockwise order (Andrew's monotone chain)."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_3d(pts):
    """Supporting planes ``(normal, offset)`` with all points on ``normal . x <= offset``.

    Brute force over point triples; each facet is reported once.
    """
    facets = {}
    for p, q, r in itertools.combinations(pts, 3):
        nrm = _cross3(_sub(q, p), _sub(r, p))
        if nrm == (0, 0, 0):
            continue
        off = _dot(nrm, p)
        vals = [_dot(nrm, x) - off for x in pts]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            nrm, off = _scale(-1, nrm), -off
        else:
            continue
        on = frozenset(x for x in pts if _dot(nrm, x) == off)
        facets.setdefault(on, (nrm, off))
    return [(nrm, off, on) for on, (nrm, off) in facets.items()]


def _intrinsic_vertices(coords):
    """Extreme points of a full-dimensional point cloud in its own coordinates."""
    r = len(coords[0])
    if r == 0:
        return [coords[0]]
    if r == 1:
        return sorted({min(coords), max(coords)})
    if r == 2:
        return _hull_2d(coords)
    out = set()
    for _, _, on in _facets_3d(list(set(coords))):
        face = list(on)
        fr = _frame_of(face)
        local = [fr.coords(x) for x in face]
        out.update(fr.point(c) for c in _intrinsic_vertices(local))
    return sorted(out)


def _intrinsic_contains(coords, x) -> bool:
    r = len(x)
    if r == 0:
        return True
    if r == 1:
        return min(coords)[0] <= x[0] <= max(coords)[0]
    if r == 2:
        hull = _hull_2d(coords)
        return all(_cross2(hull[i], hull[(i + 1) % len(hull)], x) >= 0 for i in range(len(hull)))
    return all(_dot(nrm, x) <= off for nrm, off, _ in _facets_3d(list(set(coords))))


# -- public types ------------------------------------------------------------------


@dataclass(frozen=True)
class QPolytope:
    """Convex hull of finitely many rational points (possibly none)."""

    dim: int
    generators: tuple[QPoint, ...] = ()

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise DimensionMismatch(f"ambient dimension must be 2 or 3, got {self.dim}")
        gens = tuple(tuple(Fraction(c) for c in p) for p in self.generators)
        if any(len(p) != self.dim for p in gens):
            raise DimensionMismatch("generator has the wrong number of coordinates")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, points: Iterable[Sequence], dim: int | None = None) -> "QPolytope":
        pts = [qpoint(*p) for p in points]
        if dim is None:
            if not pts:
                raise DimensionMismatch("dimension needed for an empty polytope")
            dim = len(pts[0])
        return cls(dim, tuple(pts))

    @property
    def is_empty(self) -> bool:
        return not self.generators

    @cached_property
    def _frame(self) -> _Frame:
        return _frame_of(sorted(set(self.generators)))

    @cached_property
    def affine_dim(self) -> int:
        return -1 if self.is_empty else len(self._frame.basis)

    @cached_property
    def vertices(self) -> tuple[QPoint, ...]:
        """Extreme points, sorted lexicographically."""
        if self.is_empty:
            return ()
        fr = self._frame
        coords = [fr.coords(p) for p in set(self.generators)]
        return tuple(sorted(fr.point(c) for c in _intrinsic_vertices(coords)))

    @cached_property
    def _vertex_coords(self):
        fr = self._frame
        return [fr.coords(v) for v in self.vertices]

    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        c = self._frame.coords(qpoint(*x))
        return c is not None and _intrinsic_contains(self._vertex_coords, c)

    def same_set(self, other: "QPolytope") -> bool:
        """Set equality by mutual vertex containment."""
        if self.dim != other.dim:
            raise DimensionMismatch("polytopes live in different dimensions")
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return all(other.contains(v) for v in self.vertices) and all(self.contains(v) for v in other.vertices)

    def ccw_vertices(self) -> list[QPoint]:
        """Vertices in counter-clockwise order (plane only)."""
        if self.dim != 2:
            raise DimensionMismatch("ccw order is only defined in the plane")
        return _hull_2d(list(self.vertices))


def empty(dim: int) -> QPolytope:
    return QPolytope(dim, ())


@dataclass(frozen=True)
class AffineFlat:
    point: QPoint
    directions: tuple[QPoint, ...] = ()

    def __post_init__(self):
        pt = qpoint(*self.point)
        dirs = tuple(qpoint(*v) for v in self.directions)
        d = len(pt)
        if d not in (2, 3) or any(len(v) != d for v in dirs):
            raise DimensionMismatch("flat must live in the plane or in space")
        if len(dirs) >= d:
            raise DimensionMismatch(f"flat in R^{d} may have at most {d - 1} directions")
        if _rank(dirs) != len(dirs):
            raise ValueError("flat directions must be linearly independent")
        object.__setattr__(self, "point", pt)
        object.__setattr__(self, "directions", dirs)

    @property
    def dim(self) -> int:
        return len(self.point)

    @property
    def flat_dim(self) -> int:
        return len(self.directions)

    def contains(self, x: Sequence) -> bool:
        return _Frame(self.point, self.directions).coords(qpoint(*x)) is not None

    @classmethod
    def through(cls, p: Sequence, q: Sequence) -> "AffineFlat":
        """Line through two distinct points."""
        p, q = qpoint(*p), qpoint(*q)
        return cls(p, (_sub(q, p),))


@dataclass(frozen=True)
class HalfspaceRef:
    """Closed halfspace ``normal . x <= offset``; its boundary is a supporting line or plane."""

    normal: QPoint
    offset: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ValueError("halfspace normal must be non-zero")


# -- lattice operations on polytopes ----------------------------------------------


def hull_join(b: QPolytope, c: QPolytope) -> QPolytope:
    """``conv(B u C)``."""
    if b.dim != c.dim:
        raise DimensionMismatch(f"cannot join polytopes in R^{b.dim} and R^{c.dim}")
    return QPolytope(b.dim, b.generators + c.generators)


def _clip_line_2d(a: AffineFlat, p: QPolytope) -> QPolytope:
    """Line against polygon, edge by edge."""
    u = a.directions[0]
    nrm = (-u[1], u[0])
    off = _dot(nrm, a.point)
    verts = p.ccw_vertices() if p.affine_dim == 2 else list(p.vertices)
    if len(verts) == 1:
        edges = [(verts[0], verts[0])]
    elif len(verts) == 2:
        edges = [(verts[0], verts[1])]
    else:
        edges = [(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]
    hits = []
    for x, y in edges:
        fx, fy = _dot(nrm, x) - off, _dot(nrm, y) - off
        if fx == 0:
            hits.append(x)
        if fy == 0:
            hits.append(y)
        if fx * fy < 0:
            lam = fx / (fx - fy)
            hits.append(_add(x, _scale(lam, _sub(y, x))))
    return QPolytope(2, tuple(hits))


def _meet_by_simplices(a: AffineFlat, p: QPolytope) -> QPolytope:
    """Flat against polytope via simplices of at most ``d - k + 1`` vertices.

    Each vertex of the intersection is the unique crossing point of the flat
    with some such simplex spanned by the polytope's vertices.
    """
    d, k = a.dim, a.flat_dim
    verts = list(p.vertices)
    hits = []
    for size in range(1, min(d - k + 1, len(verts)) + 1):
        for simplex in itertools.combinations(verts, size):
            q0 = simplex[0]
            edges = [_sub(q, q0) for q in simplex[1:]]
            cols = list(a.directions) + [_scale(-1, e) for e in edges]
            sol, unique = _solve(cols, _sub(q0, a.point))
            if sol is None or not unique:
                continue
            mu = sol[k:]
            if all(m >= 0 for m in mu) and sum(mu) <= 1:
                x = q0
                for m, e in zip(mu, edges):
                    x = _add(x, _scale(m, e))
                hits.append(x)
    return QPolytope(d, tuple(hits))


def meet_with_flat(a: AffineFlat, p: QPolytope) -> QPolytope:
    """``A n conv(P)`` as a polytope (empty when disjoint)."""
    if a.dim != p.dim:
        raise DimensionMismatch(f"flat in R^{a.dim} against polytope in R^{p.dim}")
    if p.is_empty:
        return empty(p.dim)
    if a.flat_dim == 0:
        return QPolytope(p.dim, (a.point,)) if p.contains(a.point) else empty(p.dim)
    if a.dim == 2:
        return _clip_line_2d(a, p)
    return _meet_by_simplices(a, p)


def affine_hull_identity_sides(a: AffineFlat, b: QPolytope, c: QPolytope) -> tuple[QPolytope, QPolytope]:
    """``(A n conv(B, C), conv(A n B, C))``; requires every point of C to lie on A."""
    if not all(a.contains(x) for x in c.generators):
        raise PreconditionCNotInA("C is not contained in the flat A")
    lhs = meet_with_flat(a, hull_join(b, c))
    rhs = hull_join(meet_with_flat(a, b), c)
    return lhs, rhs


def verify_affine_hull_identity(a: AffineFlat, b: QPolytope, c: QPolytope) -> bool:
    lhs, rhs = affine_hull_identity_sides(a, b, c)
    return lhs.vertices == rhs.vertices and lhs.same_set(rhs)


# -- faces and vertices ------------------------------------------------------------


def faces_2d_with_support(p: QPolytope, include_improper: bool = False) -> list[tuple[QPolytope, HalfspaceRef]]:
    """Faces of a plane polytope with a supporting halfspace for each.

    Vertices come first, then edges. ``include_improper`` adds ``P`` itself
    when it is lower-dimensional (a line supports it there).
    """
    if p.dim != 2:
        raise DimensionMismatch("faces_2d works in the plane")
    out = []
    r = p.affine_dim
    if r == 2:
        vs = p.ccw_vertices()
        m = len(vs)
        outward = []
        for i in range(m):
            x, y = vs[i], vs[(i + 1) % m]
            e = _sub(y, x)
            outward.append((e[1], -e[0]))
        for i in range(m):
            nrm = _add(outward[i - 1], outward[i])
            out.append((QPolytope(2, (vs[i],)), HalfspaceRef(nrm, _dot(nrm, vs[i]))))
        for i in range(m):
            x, y = vs[i], vs[(i + 1) % m]
            out.append((QPolytope(2, (x, y)), HalfspaceRef(outward[i], _dot(outward[i], x))))
    elif r == 1:
        x, y = p.vertices
        for end, other in ((x, y), (y, x)):
            nrm = _sub(end, other)
            out.append((QPolytope(2, (end,)), HalfspaceRef(nrm, _dot(nrm, end))))
        if include_improper:
            e = _sub(y, x)
            nrm = (e[1], -e[0])
            out.append((QPolytope(2, (x, y)), HalfspaceRef(nrm, _dot(nrm, x))))
    elif r == 0 and include_improper:
        (x,) = p.vertices
        nrm = (Fraction(1), Fraction(0))
        out.append((QPolytope(2, (x,)), HalfspaceRef(nrm, _dot(nrm, x))))
    return out


def faces_2d(p: QPolytope, include_improper: bool = False) -> list[QPolytope]:
    return [face for face, _ in faces_2d_with_support(p, include_improper)]


def supporting_flat(h: HalfspaceRef) -> AffineFlat:
    """Boundary line of a plane halfspace."""
    nrm = h.normal
    if len(nrm) != 2:
        raise DimensionMismatch("supporting_flat is implemented for the plane")
    if nrm[1] != 0:
        pt = (Fraction(0), h.offset / nrm[1])
    else:
        pt = (h.offset / nrm[0], Fraction(0))
    return AffineFlat(pt, ((-nrm[1], nrm[0]),))


def vertex_minimality(p: QPolytope) -> bool:
    """Each vertex is needed, and the vertices span the same hull as the generators."""
    if p.is_empty:
        return True
    verts = p.vertices
    whole = QPolytope(p.dim, verts)
    if not all(v in p.generators for v in verts):
        return False
    if not all(whole.contains(g) for g in p.generators):
        return False
    for i, v in enumerate(verts):
        rest = verts[:i] + verts[i + 1:]
        if rest and QPolytope(p.dim, rest).contains(v):
            return False
    return True


# -- text formats --------------------------------------------------------------------


def _parse_coords(fields, lineno):
    try:
        return tuple(Fraction(f) for f in fields)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"line {lineno}: bad rational coordinate in {' '.join(fields)!r}") from None


def parse_polytope(text: str, dim: int | None = None) -> QPolytope:
    """One point per line, coordinates as ``num/den``; ``#`` starts a comment."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            pts.append(_parse_coords(line.split(), lineno))
    if dim is None:
        if not pts:
            raise ValueError("empty polytope file needs an explicit dimension")
        dim = len(pts[0])
    return QPolytope(dim, tuple(pts))


def parse_flat(text: str) -> AffineFlat:
    """``point: x y [z]`` followed by zero or more ``direction: dx dy [dz]`` lines."""
    point = None
    dirs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        coords = _parse_coords(rest.split(), lineno)
        if key.strip() == "point":
            point = coords
        elif key.strip() == "direction":
            dirs.append(coords)
        else:
            raise ValueError(f"line {lineno}: expected 'point:' or 'direction:'")
    if point is None:
        raise ValueError("flat file has no 'point:' line")
    return AffineFlat(point, tuple(dirs))


def format_point(p: QPoint) -> str:
    return " ".join(f"{c.numerator}/{c.denominator}" for c in p)


def format_polytope(p: QPolytope) -> str:
    return "".join(format_point(v) + "\n" for v in p.vertices)
