"""Max-affine convex functions with exact rational coefficients.

A function is a finite nonempty set of affine pieces (a, b) representing
x -> max_i <a_i, x> + b_i.  Piece lists are kept in a canonical order
(lexicographic by slope, then offset) so that structural equality is piece
equality.  The canonical minimal representation drops every piece that never
strictly wins; `prune` computes it exactly.

Pruning decides, per piece, whether its lifted point (a_i, -b_i) is a vertex
of the lower convex hull of all lifted points.  In one dimension this is a
monotone-chain walk; in higher dimensions it is a small exact feasibility
problem per piece (is the lifted point a convex combination of the others,
allowing slack upward?).  Dimensions above MAX_HULL_DIM are refused rather
than silently approximated.
"""

from . import _simplex
from .errors import CapabilityLimit, DimensionMismatch
from .linalg import RationalMatrix, dot
from .rational import Q, rat, rat_vector

MAX_HULL_DIM = 4

_ZERO = Q(0)
_ONE = Q(1)


class MaxAffineFn:
    """x -> max over pieces (a, b) of <a, x> + b, with exact coefficients."""

    __slots__ = ("dim", "pieces")

    def __init__(self, dim, pieces):
        if dim < 1:
            raise DimensionMismatch(f"dimension must be positive, got {dim}")
        norm = []
        for a, b in pieces:
            a = rat_vector(a)
            if len(a) != dim:
                raise DimensionMismatch(f"piece slope has length {len(a)}, expected {dim}")
            norm.append((a, rat(b)))
        if not norm:
            raise ValueError("a max-affine function needs at least one piece")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "pieces", tuple(sorted(set(norm))))

    def __setattr__(self, name, value):
        raise AttributeError("MaxAffineFn is immutable")

    @classmethod
    def affine(cls, a, b):
        a = rat_vector(a)
        return cls(len(a), [(a, b)])

    @classmethod
    def constant(cls, dim, value):
        return cls(dim, [((0,) * dim, value)])

    @classmethod
    def zero(cls, dim):
        return cls.constant(dim, 0)

    def evaluate(self, x):
        x = rat_vector(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"point has length {len(x)}, expected {self.dim}")
        return max(dot(a, x) + b for a, b in self.pieces)

    __call__ = evaluate

    def offset(self, delta):
        """Pointwise addition of a constant; never changes which pieces win."""
        delta = rat(delta)
        return MaxAffineFn(self.dim, [(a, b + delta) for a, b in self.pieces])

    def __eq__(self, other):
        return (
            isinstance(other, MaxAffineFn)
            and self.dim == other.dim
            and self.pieces == other.pieces
        )

    def __hash__(self):
        return hash((self.dim, self.pieces))

    def __repr__(self):
        inner = ", ".join(f"({'(' + ', '.join(map(str, a)) + ')'}, {b})" for a, b in self.pieces)
        return f"MaxAffineFn(dim={self.dim}, pieces=[{inner}])"


def add(f, h, do_prune=True):
    """Pointwise sum: pieces are the pairwise piece sums.

    With do_prune=False the result is still pointwise correct (max of the
    pairwise sums), just not in minimal form; callers that only evaluate can
    skip the hull work.
    """
    if f.dim != h.dim:
        raise DimensionMismatch(f"dimensions {f.dim} and {h.dim} differ")
    pieces = [
        (tuple(af[i] + ah[i] for i in range(f.dim)), bf + bh)
        for af, bf in f.pieces
        for ah, bh in h.pieces
    ]
    out = MaxAffineFn(f.dim, pieces)
    return prune(out) if do_prune else out


def scale(f, lam):
    """Pointwise nonnegative scaling lam * f."""
    lam = rat(lam)
    if lam < 0:
        raise ValueError("scaling a max of affine pieces by a negative factor breaks convexity")
    if lam == 0:
        return MaxAffineFn.zero(f.dim)
    return MaxAffineFn(f.dim, [(tuple(lam * ai for ai in a), lam * b) for a, b in f.pieces])


def max_of(f, h, do_prune=True):
    """Pointwise maximum: the union of the piece sets."""
    if f.dim != h.dim:
        raise DimensionMismatch(f"dimensions {f.dim} and {h.dim} differ")
    out = MaxAffineFn(f.dim, f.pieces + h.pieces)
    return prune(out) if do_prune else out


def compose_linear(f, g):
    """f after the linear map g, i.e. x -> f(g x); pieces map to (g^T a, b).

    Composition with an invertible map sends winning regions to winning
    regions, so a pruned input stays pruned; a singular map can create
    dominated pieces, so those get re-pruned.
    """
    if not isinstance(g, RationalMatrix):
        raise TypeError("compose_linear expects a RationalMatrix")
    if g.dim != f.dim:
        raise DimensionMismatch(f"matrix dim {g.dim}, function dim {f.dim}")
    gt = g.transpose()
    out = MaxAffineFn(f.dim, [(gt.matvec(a), b) for a, b in f.pieces])
    if g.det() == 0:
        out = prune(out)
    return out


def _prune_1d(pieces):
    # Upper envelope of lines = lower hull of lifted points (a, -b).
    pts = sorted((a[0], -b) for a, b in pieces)
    # Equal slopes: only the lowest lifted point (largest b) can win.
    dedup = []
    for x, y in pts:
        if dedup and dedup[-1][0] == x:
            if y < dedup[-1][1]:
                dedup[-1] = (x, y)
        else:
            dedup.append((x, y))
    hull = []
    for p in dedup:
        while len(hull) >= 2:
            ox, oy = hull[-2]
            ax, ay = hull[-1]
            cross = (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return [((x,), -y) for x, y in hull]


_CERTIFY_SEEDS = (2, 3, 5, 7, 11, 13)


def _certify_directions(dim):
    # Fixed probe directions: cheap uniqueness certificates that spare most
    # pieces their feasibility solve.  Deterministic by construction.
    dirs = []
    for k in range(dim):
        e = [_ZERO] * dim
        e[k] = _ONE
        dirs.append(tuple(e))
        e2 = list(e)
        e2[k] = -_ONE
        dirs.append(tuple(e2))
    dirs.append((_ONE,) * dim)
    dirs.append((-_ONE,) * dim)
    for s in _CERTIFY_SEEDS[:4]:
        dirs.append(tuple(Q(((s * (k + 3) ** 3) % 17) - 8, 3) for k in range(dim)))
    return dirs


def _lifted_vertex_filter(lifted, dim):
    """Indices of lower-hull vertices among lifted points (y, t) in R^(dim+1).

    A point is a lower-hull vertex iff it is NOT expressible as a convex
    combination of the other points plus nonnegative vertical slack.
    """
    m = len(lifted)
    if m == 1:
        return [0]
    kept = set()
    # Certificate pass: unique maximizer of <y, a> + b over pieces, i.e.
    # unique minimizer of t - <y, a-part>; phrase directly on lifted points.
    for y in _certify_directions(dim):
        best = None
        best_i = -1
        tie = False
        for i, (a, t) in enumerate(lifted):
            val = dot(y, a) - t
            if best is None or val > best:
                best, best_i, tie = val, i, False
            elif val == best:
                tie = True
        if not tie:
            kept.add(best_i)
    out = []
    for i in range(m):
        if i in kept:
            out.append(i)
            continue
        others = [lifted[j] for j in range(m) if j != i]
        ai, ti = lifted[i]
        rows = []
        for k in range(dim):
            rows.append([p[0][k] for p in others] + [_ZERO])
        rows.append([_ONE] * len(others) + [_ZERO])
        rows.append([p[1] for p in others] + [_ONE])
        rhs = list(ai) + [_ONE, ti]
        if not _simplex.feasible_eq(rows, rhs):
            out.append(i)
    return out


def prune(f):
    """Minimal canonical representation: drop every never-winning piece."""
    if f.dim > MAX_HULL_DIM:
        raise CapabilityLimit(
            f"pruning works through dimension {MAX_HULL_DIM}, got {f.dim}"
        )
    pieces = list(f.pieces)
    if len(pieces) == 1:
        return f
    if f.dim == 1:
        return MaxAffineFn(1, _prune_1d(pieces))
    # Parallel pieces: keep only the highest offset per slope.
    best = {}
    for a, b in pieces:
        if a not in best or b > best[a]:
            best[a] = b
    pieces = [(a, b) for a, b in best.items()]
    if len(pieces) == 1:
        return MaxAffineFn(f.dim, pieces)
    lifted = [(a, -b) for a, b in pieces]
    kept = _lifted_vertex_filter(lifted, f.dim)
    return MaxAffineFn(f.dim, [pieces[i] for i in kept])
