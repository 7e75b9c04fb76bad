"""Calculus of finite functions from exponents to stepped-exponential values.

A finite function assigns positive values below the strongly critical
bound to finitely many exponents below the top regular constant.  The
module provides the domination relation `less_c`, irreducibility, the
lexicographic strict order `lx_less`, and the ordinal measure `o_of`
used to show that derived functions decrease.
"""

import functools

from .errors import ShapeError
from .terms import ZERO, ONE, FiniteFn, EMPTY_FN, osum
from .theta import (TNF, to_tnf, from_tnf, theta, theta_minus, head, tail,
                    parts, a_measure, osub, omega_mul_left, below_plus_omega)

LT, EQ, GT = -1, 0, 1


def _compare(a, b, n):
    from .order import compare
    return compare(a, b, n)


def _sort_terms(ts, n):
    return sorted(ts, key=functools.cmp_to_key(lambda a, b: _compare(a, b, n)))


def _dedup(ts):
    seen = set()
    out = []
    for t in ts:
        if id(t) not in seen:
            seen.add(id(t))
            out.append(t)
    return out


def restrict_below(f, c, n=1):
    """The entries of f on exponents strictly below c."""
    return FiniteFn(tuple((e, v) for e, v in f.entries
                          if _compare(e, c, n) == LT))


def restrict_from(f, c, n=1):
    """The entries of f on exponents at or above c."""
    return FiniteFn(tuple((e, v) for e, v in f.entries
                          if _compare(e, c, n) != LT))


def concat(g, f, c, n=1):
    """g below c glued to f at or above c."""
    return FiniteFn(restrict_below(g, c, n).entries + restrict_from(f, c, n).entries)


def less_c(f, c, xi, n=1):
    """Domination of the upper entries of f at level c by the TNF value xi."""
    above = [e for e in f.supp() if _compare(e, c, n) != LT]
    if not above:
        return True
    fc = f.value_at(c)
    higher = [e for e in f.supp() if _compare(e, c, n) == GT]
    nxt = _sort_terms(higher, n)[0] if higher else None
    for mu in parts(xi, keep_coeff=True):
        if not mu.entries:
            continue
        if _compare(fc, from_tnf(mu), n) != LT:
            continue
        if nxt is None:
            return True
        rest = theta_minus(osub(nxt, c), tail(mu), n)
        if less_c(f, nxt, rest, n):
            return True
    # the zero part dominates only a vanished upper segment
    if fc.kind == 'zero' and nxt is None:
        return False
    return False


def is_irreducible(f, n=1):
    """No adjacent pair of support points can be merged downward."""
    ent = list(f.entries)
    while len(ent) >= 2:
        c, fc = ent[-2]
        cd, fcd = ent[-1]
        step = from_tnf(theta(osub(cd, c), to_tnf(fcd, n), n))
        tl = from_tnf(tail(to_tnf(fc, n)))
        if _compare(tl, step, n) != GT:
            return False
        ent = ent[:-2] + [(c, osum(fc, step))]
    return True


def _shortest_part_above(x, bound, n):
    """The fewest-entry upper partial sum of x strictly above bound."""
    for mu in parts(x, keep_coeff=True):
        if _compare(from_tnf(mu), bound, n) == GT:
            return mu
    return None


def lx_less(f, g, b=ZERO, n=1):
    """Lexicographic strict order on finite functions from level b up."""
    pts = _sort_terms(_dedup(
        [e for e in f.supp() + g.supp() if _compare(e, b, n) != LT]), n)
    c = None
    for e in pts:
        if f.value_at(e) is not g.value_at(e):
            c = e
            break
    if c is None:
        return False
    fc = f.value_at(c)
    gc = g.value_at(c)
    if _compare(fc, gc, n) == LT:
        mu = _shortest_part_above(to_tnf(gc, n), fc, n)
        if mu is None:
            return False
        tl_mu = from_tnf(tail(mu))
        for e in f.supp():
            if _compare(e, c, n) != GT:
                continue
            step = from_tnf(theta(osub(e, c), to_tnf(f.value_at(e), n), n))
            if _compare(tl_mu, step, n) != GT:
                if not lx_less(f, g, e, n):
                    return False
        return True
    # fc > gc
    nu = _shortest_part_above(to_tnf(fc, n), gc, n)
    if nu is None:
        return False
    tl_nu = from_tnf(tail(nu))
    for e in g.supp():
        if _compare(e, c, n) != GT:
            continue
        step = from_tnf(theta(osub(e, c), to_tnf(g.value_at(e), n), n))
        if _compare(tl_nu, step, n) != GT and lx_less(f, g, e, n):
            return True
    return False


def _levels(f, n):
    """Support points with 0 adjoined, ascending."""
    pts = f.supp()
    if not any(p.kind == 'zero' for p in pts):
        pts = [ZERO] + pts
    return _sort_terms(_dedup(pts), n)


def o_of(f, n=1):
    """The ordinal measure of a finite function."""
    return o_at(f, ZERO, n)


def o_at(f, d, n=1):
    """The ordinal measure of f read from level d."""
    pts = _levels(f, n)
    zs = _zetas(f, pts, n)
    for p, z in zip(pts, zs):
        if p is d:
            return z
    # off the grid: step down from the first support point at or above d
    higher = [e for e in f.supp() if _compare(e, d, n) == GT]
    if not higher and _compare(d, ZERO, n) == GT:
        return ZERO
    if not higher:
        return zs[0]
    c = _sort_terms(higher, n)[0]
    zc = o_at(f, c, n)
    return from_tnf(theta(osub(c, d), to_tnf(osum(zc, ONE), n), n))


def _zetas(f, pts, n):
    """Accumulated measures at each level of pts, ascending order."""
    zs = [None] * len(pts)
    for i in range(len(pts) - 1, -1, -1):
        xi = f.value_at(pts[i])
        wa = omega_mul_left(from_tnf(a_measure(to_tnf(xi, n), n)))
        if i == len(pts) - 1:
            zs[i] = wa
        else:
            step = theta(osub(pts[i + 1], pts[i]),
                         to_tnf(osum(zs[i + 1], ONE), n), n)
            zs[i] = osum(wa, from_tnf(step))
    return zs


def step_down_ok(f, g, d, c, n=1):
    """Whether g is an admissible step-down of f across the gap (d, c).

    f is the source function with c in its support; g agrees with f below
    d, has nothing in the open interval (d, c), stays below
    f(d) + T_{c-d}(f(c))*w at d, and is dominated by f(c) at level c.
    When all of this holds, o_of(g) < o_of(f).
    """
    from .order import compare
    if compare(d, c, n) != LT:
        return False
    if not any(e is c for e in f.supp()):
        return False
    for e in f.supp():
        if compare(e, d, n) == GT and compare(e, c, n) == LT:
            return False
    for e in g.supp():
        if compare(e, d, n) == GT and compare(e, c, n) == LT:
            return False
    if restrict_below(g, d, n) != restrict_below(f, d, n):
        return False
    step = theta(osub(c, d), to_tnf(f.value_at(c), n), n)
    if not below_plus_omega(to_tnf(g.value_at(d), n),
                            to_tnf(f.value_at(d), n), step):
        return False
    return less_c(g, c, to_tnf(f.value_at(c), n), n)
