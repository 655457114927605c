"""Analysis tools over scalar valuations on max-affine functions.

Includes the exact homogeneous decomposition (values along scalings of the
argument interpolate a polynomial whose coefficients are the homogeneous
parts), polarization of a homogeneous valuation by mixed differences, hinge
pairs (the canonical max/min test pairs for the valuation identity), a
locality probe, and the deterministic search for contravariance
counterexamples in dimensions three and up.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionMismatch
from .linalg import RationalMatrix, dot, solve_square, unit_vector
from .maxaffine import MaxAffineFn, add, compose_linear, max_of, prune, scale
from .rational import Q, rat, rat_vector
from .valuations import CheckReport, psi_eval

_ZERO = Q(0)
_ONE = Q(1)


class ScalarValuation:
    """A scalar map on max-affine functions with a declared degree bound.

    The evaluator is an arbitrary callable; nothing here assumes it is a
    valuation beyond what the individual checks verify.
    """

    __slots__ = ("evaluator", "degree_bound", "label")

    def __init__(self, evaluator, degree_bound, label="scalar-valuation"):
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        object.__setattr__(self, "evaluator", evaluator)
        object.__setattr__(self, "degree_bound", int(degree_bound))
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarValuation is immutable")

    def __call__(self, f):
        return rat(self.evaluator(f))

    @classmethod
    def from_valuation_spec(cls, spec, x, degree_bound=None):
        """mu(f) = psi(f)(x) for a fixed probe point x."""
        x = rat_vector(x)
        bound = spec.dim if degree_bound is None else degree_bound
        return cls(lambda f: psi_eval(spec, f, x), bound, label="psi-probe")


def homogeneous_decompose(mu, f):
    """Coefficients (mu_0(f), ..., mu_N(f)) of lambda -> mu(lambda f).

    Exact Vandermonde interpolation at lambda = 0..N with a consistency probe
    at N+1: if mu(lambda f) is not a polynomial of degree at most N in
    lambda, this raises ValueError instead of returning garbage.
    """
    n = mu.degree_bound
    values = [mu(scale(f, k)) for k in range(n + 2)]
    rows = [[Q(k) ** j for j in range(n + 1)] for k in range(n + 1)]
    coeffs = solve_square(rows, values[: n + 1])
    probe = sum((coeffs[j] * Q(n + 1) ** j for j in range(n + 1)), _ZERO)
    if probe != values[n + 1]:
        raise ValueError(
            f"values along scalings are not polynomial of degree <= {n}; "
            f"decomposition is undefined"
        )
    return list(coeffs)


def polarize(mu, degree, funcs, check=True):
    """Symmetric multilinear polarization of a degree-homogeneous valuation.

    polarize(mu, k, (f_1, ..., f_k)) is the mixed difference
    (1/k!) sum over subsets S of [k] of (-1)^(k-|S|) mu(sum of f_j, j in S),
    which recovers mu on the diagonal and is symmetric in its arguments.
    With check=True each argument is first verified to see only degree-k
    behavior through `homogeneous_decompose`.
    """
    funcs = list(funcs)
    k = int(degree)
    if k < 1:
        raise ValueError("polarization needs degree at least one")
    if len(funcs) != k:
        raise ValueError(f"expected {k} arguments, got {len(funcs)}")
    dim = funcs[0].dim
    if any(f.dim != dim for f in funcs):
        raise DimensionMismatch("polarization arguments live in different dimensions")
    if mu.degree_bound < k:
        raise ValueError("declared degree bound is below the polarization degree")
    if check:
        for f in funcs:
            coeffs = homogeneous_decompose(mu, f)
            for j, cj in enumerate(coeffs):
                if j != k and cj != 0:
                    raise ValueError(
                        f"valuation is not {k}-homogeneous: degree {j} coefficient {cj}"
                    )
    total = _ZERO
    zero = MaxAffineFn.zero(dim)
    for r in range(k + 1):
        for subset in combinations(range(k), r):
            acc = zero
            for j in subset:
                acc = add(acc, funcs[j], do_prune=False)
            total += (-1) ** (k - r) * mu(acc)
    import math

    return total / math.factorial(k)


@dataclass(frozen=True)
class HingePair:
    """The canonical valuation-identity test pair.

    From a base F and an affine hinge g = <u, x> - t with weight cw > 0:
    f = F + cw * max(g, 0) and h = F + cw * max(-g, 0).  Then pointwise
    min{f, h} = F exactly (the two hinge parts never win together) and
    max{f, h} = F + cw * |g|, both max-affine, so the valuation identity has
    all four values available in closed form.
    """

    f: MaxAffineFn
    h: MaxAffineFn
    fmax: MaxAffineFn
    fmin: MaxAffineFn
    base: MaxAffineFn
    u: tuple
    t: object
    cw: object


def hinge_pair(base, u, t, cw):
    """Build and exactly validate a HingePair; see the class docstring."""
    u = rat_vector(u)
    if len(u) != base.dim:
        raise DimensionMismatch(f"hinge direction has length {len(u)}, expected {base.dim}")
    if all(v == 0 for v in u):
        raise ValueError("hinge direction must be nonzero")
    t = rat(t)
    cw = rat(cw)
    if cw <= 0:
        raise ValueError("hinge weight must be positive")
    n = base.dim
    zero = (_ZERO,) * n
    pos = MaxAffineFn(n, [(tuple(cw * v for v in u), -cw * t), (zero, _ZERO)])
    neg = MaxAffineFn(n, [(tuple(-cw * v for v in u), cw * t), (zero, _ZERO)])
    absg = MaxAffineFn(n, [(tuple(cw * v for v in u), -cw * t), (tuple(-cw * v for v in u), cw * t)])
    f = add(base, pos)
    h = add(base, neg)
    fmax = add(base, absg)
    fmin = prune(base)
    if max_of(f, h) != fmax:
        raise AssertionError("hinge construction broke max{f, h} = base + cw|g|")
    # min{f, h} = base holds identically; spot check a deterministic sample.
    for k in range(2 * n + 1):
        x = tuple(Q(((k + 1) * (j + 2)) % 7 - 3, 2) for j in range(n))
        if min(f(x), h(x)) != fmin(x):
            raise AssertionError("hinge construction broke min{f, h} = base")
    return HingePair(f=f, h=h, fmax=fmax, fmin=fmin, base=fmin, u=u, t=t, cw=cw)


def valuation_identity_check(mu, f, h=None, fmax=None, fmin=None):
    """mu(max{f,h}) + mu(min{f,h}) == mu(f) + mu(h), exactly.

    Accepts a HingePair (all four functions precomputed and certified) or a
    raw pair f, h; in the raw case min{f, h} must be convex, which is decided
    exactly, and the convex minorant serves as the min.
    Returns (ok, lhs, rhs, parts).
    """
    if isinstance(f, HingePair):
        pair = f
        f, h, fmax, fmin = pair.f, pair.h, pair.fmax, pair.fmin
    elif h is None:
        raise ValueError("pass a HingePair or both f and h")
    if fmax is None:
        fmax = max_of(f, h)
    if fmin is None:
        from .lifted import is_min_convex, min_convex_hull

        if not is_min_convex(f, h):
            raise ValueError("min{f, h} is not convex; the identity is not applicable")
        fmin = min_convex_hull(f, h)
    lhs = mu(fmax) + mu(fmin)
    rhs = mu(f) + mu(h)
    return lhs == rhs, lhs, rhs, {"max": mu(fmax), "min": mu(fmin), "f": mu(f), "h": mu(h)}


def find_strict_majorant(f, probes, rng=None):
    """An affine ell strictly below f on the probe set but above f somewhere.

    Deterministic construction: take the coordinatewise maximum of the piece
    slopes plus a positive bump, so ell eventually outgrows f along the
    all-ones direction; the offset pins ell strictly under f on the probes.
    Returns (ell, z) with ell the affine function and z a point where
    ell(z) > f(z).
    """
    n = f.dim
    bump = _ONE
    if rng is not None:
        bump = Q(rng.randint(1, 3), rng.randint(1, 2))
    slope = tuple(max(a[k] for a, _ in f.pieces) + bump for k in range(n))
    beta = min(f(p) - dot(slope, p) for p in probes) - _ONE
    ell = MaxAffineFn.affine(slope, beta)
    step = 1
    ones = (_ONE,) * n
    while step <= 2**40:
        z = tuple(Q(step) * v for v in ones)
        if ell(z) > f(z):
            return ell, z
        step *= 2
    raise AssertionError("majorant search failed; slopes should dominate eventually")


def locality_check(spec, f, x, ell=None, rng=None):
    """Output at x depends only on f near the probe rays through x.

    The probe set is {s_j x} over atoms plus the origin.  A modification
    h = max{f, ell} that agrees with f on the probe set (ell strictly below
    f there) must leave psi(.)(x) unchanged; the returned report carries the
    witness point where h differs from f, certifying the modification is not
    trivial.
    """
    x = rat_vector(x)
    probes = [(_ZERO,) * spec.dim]
    from .valuations import _argument_point

    for s, _ in spec.nu.atoms:
        probes.append(_argument_point(spec, s, x))
    if ell is None:
        ell, changed_at = find_strict_majorant(f, probes, rng=rng)
    else:
        changed_at = None
    for p in probes:
        if ell(p) >= f(p):
            raise ValueError("modification must stay strictly below f on the probe set")
    h = max_of(f, ell)
    lhs = psi_eval(spec, h, x)
    rhs = psi_eval(spec, f, x)
    if changed_at is None:
        changed_at = next((z for z in probes if h(z) != f(z)), None)
    return {
        "ok": lhs == rhs,
        "lhs": lhs,
        "rhs": rhs,
        "modified": h,
        "ell": ell,
        "changed_at": changed_at,
    }


def _hinge_function(n, axis):
    return MaxAffineFn(n, [(unit_vector(n, axis), _ZERO), ((_ZERO,) * n, _ZERO)])


def falsify_contravariance(spec, budget=1000):
    """Deterministic counterexample search for g^-T covariance, n >= 3.

    Candidates are enumerated in a fixed order: shear magnitudes 1, -1, 2,
    -2, ...; shear coordinate pairs (i, j); hinge functions max(x_a, 0);
    probe points +-e_b.  Returns a dict with found/tried and, when found,
    the exact witness (g, f, x, both side values).
    """
    if spec.variant != "equivariant":
        raise ValueError("the counterexample search targets the equivariant family")
    if spec.dim < 3:
        raise ValueError("contravariance only breaks in dimension three and up")
    if spec.nu.is_empty():
        raise ValueError("an empty measure gives a constant map; nothing to falsify")
    n = spec.dim
    tried = 0
    for mag in range(1, 10**6):
        for tval in (Q(mag), Q(-mag)):
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    g = RationalMatrix.shear(n, i, j, tval)
                    ginvt = g.inverse_transpose()
                    for axis in range(n):
                        f = _hinge_function(n, axis)
                        fg = compose_linear(f, g)
                        for b in range(n):
                            for sign in (_ONE, -_ONE):
                                if tried >= budget:
                                    return {"found": False, "tried": tried}
                                tried += 1
                                x = tuple(sign if k == b else _ZERO for k in range(n))
                                lhs = psi_eval(spec, fg, x)
                                rhs = psi_eval(spec, f, ginvt.matvec(x))
                                if lhs != rhs:
                                    return {
                                        "found": True,
                                        "tried": tried,
                                        "g": g,
                                        "f": f,
                                        "x": x,
                                        "lhs": lhs,
                                        "rhs": rhs,
                                        "gap": lhs - rhs,
                                    }
    return {"found": False, "tried": tried}


def convergence_probe(spec, f, h, x, steps=8):
    """Exact first-order behavior along f + h/j for j = 1..steps.

    For the families with a plain constant, psi(f + h/j)(x) - psi(f)(x)
    equals (1/j) times the c = 0 valuation applied to h; the gl-endomorphism
    family keeps its c f(0) sensitivity, handled by evaluating its own
    formula on h.  Failure returns the first exact mismatch.
    """
    from .valuations import ValuationSpec

    x = rat_vector(x)
    if spec.variant == "gl-endomorphism":
        hspec = spec
    else:
        hspec = ValuationSpec(spec.variant, spec.dim, 0, spec.nu)
    base = psi_eval(spec, f, x)
    target = psi_eval(hspec, h, x)
    for j in range(1, steps + 1):
        fj = add(f, scale(h, Q(1, j)), do_prune=False)
        lhs = psi_eval(spec, fj, x) - base
        rhs = target / j
        if lhs != rhs:
            return {"ok": False, "j": j, "lhs": lhs, "rhs": rhs}
    return {"ok": True, "steps": steps}
