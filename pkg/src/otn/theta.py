"""Stepped exponential normal forms.

Values strictly below the first strongly critical point above the top
regular constant L = Om(S+N) decompose uniquely as

    x  =  T_{b_m}(xi_m) * a_m  +  ...  +  T_{b_0}(xi_0) * a_0

where T_b is the b-fold stepped base-L exponential (T_1(xi) = L^xi, and
T_{w^c} iterates the fixed-point hierarchy over it), the summand values are
strictly descending, each degree b_i is a power of w below L, and each
coefficient a_i is positive and below L.  The TNF class holds such a
decomposition with entries stored value-descending.

All arithmetic routes through plain term operations (`osum`, `mk_phi`),
which normalise trees; `to_tnf` is the single source of normal forms.
"""

from .errors import RangeError, ShapeError, OrderError
from .terms import (Term, ZERO, ONE, OMEGA, om_s, mk_phi, osum, osum_list,
                    summands, is_principal, is_atom)

LT, EQ, GT = -1, 0, 1


def _compare(a, b):
    from .order import compare
    return compare(a, b)


def lam(n=1):
    """The top regular constant Om(S+n) for session parameter n."""
    return om_s(n)


def logw(p):
    """The exponent x with p = w^x, for additively principal p.

    Fixed points of the base-w exponential (atoms and phi terms with
    positive degree) are their own logarithm.
    """
    if not is_principal(p):
        raise ShapeError('logw needs an additively principal term')
    if p.kind == 'phi' and p.sub[0].kind == 'zero':
        return p.sub[1]
    return p


def omega_pow(x):
    """w^x as a term."""
    return mk_phi(ZERO, x)


def mul_principal(p, a):
    """p*a for additively principal p and arbitrary a."""
    if not is_principal(p):
        raise ShapeError('left factor must be additively principal')
    e = logw(p)
    return osum_list([omega_pow(osum(e, logw(s))) for s in summands(a)])


def mul_omega(t):
    """t*w."""
    ss = summands(t)
    if not ss:
        return ZERO
    return omega_pow(osum(logw(ss[0]), ONE))


def omega_mul_left(a):
    """w*a."""
    return mul_principal(OMEGA, a)


def osub(a, b):
    """The unique c with b + c = a; requires b <= a."""
    if b.kind == 'zero':
        return a
    sa = summands(a)
    sb = summands(b)
    i = 0
    while i < len(sb):
        if i >= len(sa):
            raise OrderError('subtrahend exceeds minuend')
        c = _compare(sa[i], sb[i])
        if c == GT:
            return osum_list(sa[i:])
        if c == LT:
            raise OrderError('subtrahend exceeds minuend')
        i += 1
    return osum_list(sa[len(sb):])


class TNF:
    """A stepped-exponential normal form: entries (degree, arg, coeff)."""

    __slots__ = ('entries', 'n')

    def __init__(self, entries, n):
        self.entries = tuple(entries)
        self.n = n

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, TNF) and self.n == other.n
                and len(self.entries) == len(other.entries)
                and all(a is c and b is d and e is f
                        for (a, b, e), (c, d, f) in zip(self.entries, other.entries)))

    def __hash__(self):
        return hash((self.n, tuple((id(a), id(b), id(c)) for a, b, c in self.entries)))

    def __repr__(self):
        from .terms import to_str
        if not self.entries:
            return 'TNF(0)'
        return 'TNF(' + ' + '.join(
            'T[%s](%s)*%s' % (to_str(b), to_str(x), to_str(c))
            for b, x, c in self.entries) + ')'


_tnf_memo = {}


def _div_by_lam(g, n):
    """g / L when g is a multiple of L = Om(S+n); None otherwise."""
    if g.kind == 'zero':
        return ZERO
    big = lam(n)
    out = []
    for s in summands(g):
        x = logw(s)
        if _compare(x, big) == LT:
            return None
        out.append(omega_pow(osub(x, big)))
    return osum_list(out)


def _lam_power_nf(zeta, n):
    """The canonical (degree, arg) pair with L^zeta = T_degree(arg)."""
    if zeta.kind == 'phi' and zeta.sub[0].kind != 'zero':
        if _compare(zeta.sub[0], lam(n)) != LT:
            raise RangeError('term outside the stepped-exponential range')
        eta = _div_by_lam(zeta.sub[1], n)
        if eta is not None:
            return omega_pow(zeta.sub[0]), eta
    return ONE, zeta


def to_tnf(t, n=1):
    """Decompose a term into stepped-exponential normal form."""
    key = (id(t), n)
    got = _tnf_memo.get(key)
    if got is not None:
        return got
    big = lam(n)
    pieces = []  # (zeta, coeff) per additive summand
    for p_term in summands(t):
        if p_term.kind == 'phi' and p_term.sub[0].kind != 'zero' \
                and _compare(p_term.sub[0], big) != LT:
            raise RangeError('term outside the stepped-exponential range')
        e = logw(p_term)
        hi = []
        lo = []
        for s in summands(e):
            if _compare(s, big) == LT:
                lo.append(s)
            else:
                hi.append(omega_pow(osub(logw(s), big)))
        zeta = osum_list(hi)
        coeff = omega_pow(osum_list(lo))
        pieces.append((zeta, coeff))
    entries = []
    for zeta, coeff in pieces:
        if entries and entries[-1][0] is zeta:
            b, x, c0 = entries[-1]
            entries[-1] = (b, x, osum(c0, coeff))
            continue
        if entries and _compare(entries[-1][0], zeta) != GT:
            raise RangeError('summands not in normal-form order')
        entries.append((zeta, None, coeff))
    out = []
    for zeta, _, coeff in entries:
        if _compare(coeff, big) != LT:
            raise RangeError('coefficient not below the top regular constant')
        if zeta.kind == 'zero':
            out.append((ONE, ZERO, coeff))
        else:
            b, xi = _lam_power_nf(zeta, n)
            out.append((b, xi, coeff))
    res = TNF(out, n)
    _tnf_memo[key] = res
    return res


def lam_mul(xi, n=1):
    """L * xi."""
    if xi.kind == 'zero':
        return ZERO
    return mul_principal(lam(n), xi)


def entry_term(b, xi, n=1):
    """The term value of T_b(xi) for a power-of-w degree b."""
    c = logw(b)
    if _compare(c, lam(n)) != LT:
        raise RangeError('degree outside the stepped-exponential range')
    return mk_phi(c, lam_mul(xi, n))


def from_tnf(x):
    """Rebuild the term a TNF denotes."""
    total = ZERO
    for b, xi, coeff in x.entries:
        v = entry_term(b, xi, x.n)
        total = osum(total, mul_principal(v, coeff))
    return total


def theta(b, x, n=1):
    """Apply the stepped exponential of degree b to a TNF value.

    The degree decomposes additively; smaller powers of w act innermost.
    """
    if b.kind == 'zero':
        return x
    for s in reversed(summands(b)):
        c = logw(s)
        if _compare(c, lam(n)) != LT:
            raise RangeError('degree outside the stepped-exponential range')
        x = to_tnf(mk_phi(c, lam_mul(from_tnf(x), n)), n)
    return x


def head(x):
    """The largest entry of a TNF, coefficient dropped."""
    if not x.entries:
        return x
    b, xi, _ = x.entries[0]
    return TNF(((b, xi, ONE),), x.n)


def tail(x):
    """The smallest entry of a TNF, coefficient dropped."""
    if not x.entries:
        return x
    b, xi, _ = x.entries[-1]
    return TNF(((b, xi, ONE),), x.n)


def parts(x, keep_coeff=False):
    """The upper partial sums of a TNF, shortest first.

    With keep_coeff=False (the printed reading) coefficients are dropped;
    the comparison relations in fn_calc use the coefficient-keeping variant.
    """
    out = []
    for k in range(len(x.entries) + 1):
        if keep_coeff:
            out.append(TNF(x.entries[:k], x.n))
        else:
            out.append(TNF(tuple((b, xi, ONE) for b, xi, _ in x.entries[:k]), x.n))
    return out


def theta_minus(c, z, n=1):
    """Peel a degree-c stepped exponential off a single-entry TNF."""
    if not z.entries:
        return z
    if len(z.entries) != 1 or z.entries[0][2] is not ONE:
        raise ShapeError('theta_minus needs a single entry with coefficient 1')
    if c.kind == 'zero':
        return z
    b, xi, _ = z.entries[0]
    if _compare(b, c) != LT:
        return theta(osub(b, c), to_tnf(xi, n), n)
    if xi.kind == 'zero':
        return TNF((), n)
    return theta_minus(osub(c, b), head(to_tnf(xi, n)), n)


_a_memo = {}


def a_measure(x, n=None):
    """Argument-erasing degree assignment used by the o-measure.

    Each entry T_b(xi)*a maps to T_b(w*a(xi))*a; keeping the coefficient
    is what makes the assignment strictly monotone.
    """
    if n is None:
        n = x.n
    key = (x, n)
    got = _a_memo.get(key)
    if got is not None:
        return got
    total = ZERO
    for b, xi, coeff in x.entries:
        ax = a_measure(to_tnf(xi, n), n)
        wa = omega_mul_left(from_tnf(ax))
        v = theta(b, to_tnf(wa, n), n)
        total = osum(total, mul_principal(from_tnf(v), coeff))
    res = to_tnf(total, n)
    _a_memo[key] = res
    return res


def below_plus_omega(x, base, t):
    """Whether x < base + t*w, for a single-entry t."""
    if len(t.entries) != 1:
        raise ShapeError('threshold term must be a single entry')
    thresh = osum(from_tnf(base), mul_omega(from_tnf(t)))
    return _compare(from_tnf(x), thresh) == LT


def coeff_condition_ok(x):
    """Coefficient discipline for finite-function values.

    Every non-final entry must carry coefficient 1; the final (smallest)
    entry may carry a larger coefficient only when its degree is 1.
    """
    if not x.entries:
        return True
    for b, _, coeff in x.entries[:-1]:
        if coeff is not ONE:
            return False
    b, _, coeff = x.entries[-1]
    if coeff is not ONE and b is not ONE:
        return False
    return True
