"""Pilot chains and component-set extractors used by the closure analysis.

`e_set` lists the collapse components of a term; `g_set`, `f_set` and
`k_tail` refine it by a cardinal threshold or a pilot chain, following the
recursions of the wellfoundedness machinery.
"""

from .terms import fn_parts

LT, EQ, GT = -1, 0, 1


def _compare(a, b, n):
    from .order import compare
    return compare(a, b, n)


def _dedup(ts):
    seen = set()
    out = []
    for t in ts:
        if id(t) not in seen:
            seen.add(id(t))
            out.append(t)
    return out


def pd(t):
    """The pilot of a collapse term; None for every other shape."""
    if t.kind == 'psi':
        return t.sub[0]
    return None


def prec(alpha, kappa):
    """Whether iterated pilots of alpha reach kappa (strict chain)."""
    cur = alpha
    while cur.kind == 'psi':
        cur = cur.sub[0]
        if cur is kappa:
            return True
    return False


def preceq(alpha, kappa):
    return alpha is kappa or prec(alpha, kappa)


def e_set(t):
    """Collapse components of a term."""
    k = t.kind
    if k in ('zero', 's'):
        return []
    if k == 'om':
        if t.base is None or t.base.kind == 's':
            return []
        return [t.base]
    if k in ('sum', 'phi'):
        out = []
        for s in t.sub:
            out.extend(e_set(s))
        return _dedup(out)
    return [t]


def _over_components(fn, t):
    out = []
    for b in e_set(t):
        out.extend(fn(b))
    return _dedup(out)


def g_set(kappa, t, n=1):
    """Components of t whose pilot chain passes through kappa.

    For a collapse term the recursion branches on the position of the
    pilot relative to kappa; other terms distribute over their collapse
    components.
    """
    def rec(u):
        if u.kind != 'psi':
            return _over_components(rec, u)
        pi, a = u.sub
        if preceq(pi, kappa):
            return [u]
        if _compare(kappa, pi, n) == LT:
            out = []
            for x in [pi, a] + fn_parts(u.fn):
                out.extend(rec(x))
            return _dedup(out)
        return rec(pi)

    return rec(t)


def f_set(delta, t, n=1):
    """Collapse components of t, opened up while at or above delta."""
    def rec(u):
        if u.kind != 'psi':
            return _over_components(rec, u)
        if _compare(u, delta, n) == LT:
            return [u]
        out = []
        for x in [u.sub[0], u.sub[1]] + fn_parts(u.fn):
            out.extend(rec(x))
        return _dedup(out)

    return rec(t)


def k_tail(delta, t, n=1):
    """Collapse components of t at or above delta, with their expansions."""
    def rec(u):
        if u.kind != 'psi':
            return _over_components(rec, u)
        if _compare(u, delta, n) == LT:
            return []
        out = [u]
        for x in [u.sub[0], u.sub[1]] + fn_parts(u.fn):
            out.extend(rec(x))
        return _dedup(out)

    return rec(t)
