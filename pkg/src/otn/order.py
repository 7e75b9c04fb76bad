"""Total order, coefficient-set computation and term validation.

The comparison follows a layered case analysis:

* 0 is minimal; sums compare lexicographically on their descending
  summand lists; phi terms compare by the standard fixed-point-hierarchy
  rule; a phi term is below an atom exactly when both its components are.
* Atoms are layered: Om(1) < collapse cardinals and their Om(kappa+k)
  successors < S < psi terms collapsing below the S-tower < Om(S+k).
* A psi term is below a non-psi regular at or above its pilot; above one
  strictly below its pilot.  Against Om(kappa+k) below the pilot, the psi
  term wins exactly when kappa is reachable inside its own hull, which the
  coefficient-set computation `k_below` decides.
* Two psi terms compare by a six-case analysis over their arguments,
  pilots, finite functions and hulls.

`k_below(delta, alpha, n)` computes the coefficient set of alpha relative
to the seed set of all terms below delta; the result is either a finite
set of terms or the sentinel TOP (unreachable).
"""

import sys
import functools

from .errors import IndexError_
from .terms import (ZERO, ONE, S_CONST, OM1, om_s, om_reg, mk_psi, mk_fn,
                    summands, is_principal, is_atom, imm_subterms,
                    all_subterms, fn_parts, to_str)

LT, EQ, GT = -1, 0, 1

if sys.getrecursionlimit() < 100000:
    sys.setrecursionlimit(100000)


# ----------------------------------------------------------------------
# coefficient-set results
# ----------------------------------------------------------------------

class KResult:
    """Either a finite set of terms or the unreachable sentinel TOP."""

    __slots__ = ('top', 'items')

    def __init__(self, top, items=()):
        self.top = top
        self.items = tuple(items)

    def all_below(self, bound, n):
        """True when finite and every member is strictly below bound."""
        if self.top:
            return False
        return all(compare(x, bound, n) == LT for x in self.items)

    def __repr__(self):
        if self.top:
            return 'KResult(TOP)'
        return 'KResult({%s})' % ','.join(to_str(x) for x in self.items)


FIN_EMPTY = KResult(False)
TOP = KResult(True)


def _fin(items):
    seen = set()
    out = []
    for x in items:
        if id(x) not in seen:
            seen.add(id(x))
            out.append(x)
    return KResult(False, out)


def _union(results, extra=()):
    items = list(extra)
    for r in results:
        if r.top:
            return TOP
        items.extend(r.items)
    return _fin(items)


# ----------------------------------------------------------------------
# comparison
# ----------------------------------------------------------------------

_cmp_memo = {}
fallback_count = 0  # diagnostic: psi pairs the six-case analysis failed to decide


def compare(a, b, n=1):
    """Three-way comparison of terms under session parameter n."""
    if a is b:
        return EQ
    key = (id(a), id(b), n)
    r = _cmp_memo.get(key)
    if r is None:
        r = _cmp(a, b, n)
        _cmp_memo[key] = r
        _cmp_memo[(id(b), id(a), n)] = -r
    return r


def _cmp(a, b, n):
    if a.kind == 'zero':
        return LT
    if b.kind == 'zero':
        return GT
    if a.kind == 'sum' or b.kind == 'sum':
        sa = summands(a)
        sb = summands(b)
        for x, y in zip(sa, sb):
            c = compare(x, y, n)
            if c != EQ:
                return c
        return (len(sa) > len(sb)) - (len(sa) < len(sb))
    if a.kind == 'phi' and b.kind == 'phi':
        c = compare(a.sub[0], b.sub[0], n)
        if c == EQ:
            return compare(a.sub[1], b.sub[1], n)
        if c == LT:
            return LT if compare(a.sub[1], b, n) == LT else GT
        return GT if compare(b.sub[1], a, n) == LT else LT
    if a.kind == 'phi':
        # b is an atom, hence strongly critical
        if compare(a.sub[0], b, n) == LT and compare(a.sub[1], b, n) == LT:
            return LT
        return GT
    if b.kind == 'phi':
        return -_cmp(b, a, n)
    return _atom_cmp(a, b, n)


def _is_card_om(t):
    """Om(kappa+k) for a collapse cardinal kappa."""
    return t.kind == 'om' and t.base is not None and t.base.kind == 'psi'


def _nonpsi_rank(t):
    if t.kind == 'om':
        if t.base is None:
            return (0, 0)
        if t.base.kind == 's':
            return (3, t.idx)
        return (1, 0)
    return (2, 0)  # S


def _atom_cmp(a, b, n):
    if a.kind != 'psi' and b.kind != 'psi':
        ra = _nonpsi_rank(a)
        rb = _nonpsi_rank(b)
        if ra[0] != rb[0]:
            return LT if ra[0] < rb[0] else GT
        if ra[0] == 1:  # both Om(kappa+k)
            c = compare(a.base, b.base, n)
            if c != EQ:
                return c
            return (a.idx > b.idx) - (a.idx < b.idx)
        return (ra[1] > rb[1]) - (ra[1] < rb[1])
    if a.kind == 'psi' and b.kind != 'psi':
        if compare(a.sub[0], b, n) != GT:
            return LT  # pilot at or below b, so the collapse is below b
        if _is_card_om(b):
            # a > Om(kappa+k) exactly when kappa lies in a's own hull
            kr = k_below(a, b.base, n)
            return GT if kr.all_below(a.sub[1], n) else LT
        return GT  # base regulars are in every hull
    if b.kind == 'psi' and a.kind != 'psi':
        return -_atom_cmp(b, a, n)
    # both psi: a pilot at or below the other term settles it outright
    # (a collapse sits below its own pilot), before the hull-based cases,
    # which are only reliable between fully validated terms
    if compare(a.sub[0], b, n) != GT:
        return LT
    if compare(b.sub[0], a, n) != GT:
        return GT
    la = _psi_less(a, b, n)
    lb = _psi_less(b, a, n)
    if la and not lb:
        return LT
    if lb and not la:
        return GT
    global fallback_count
    fallback_count += 1
    sa, sb = to_str(a), to_str(b)
    return LT if sa < sb else GT


def _hull_has(delta, gamma, bound, n):
    """gamma lies in the hull of delta's strict predecessors closed at bound."""
    return k_below(delta, gamma, n).all_below(bound, n)


def _hull_has_all(delta, gammas, bound, n):
    return all(_hull_has(delta, g, bound, n) for g in gammas)


def _psi_less(al, be, n):
    """The strict-order case analysis for two psi terms (al < be?)."""
    from .fnfun import lx_less
    pi, b = al.sub
    f = al.fn
    ka, aa = be.sub
    g = be.fn
    if compare(pi, be, n) != GT:
        return True
    c = compare(b, aa, n)
    if c == LT:
        return (compare(al, ka, n) == LT
                and _hull_has_all(be, fn_parts(f) + [pi, b], aa, n))
    if c == GT:
        return not _hull_has_all(al, fn_parts(g) + [ka, aa], b, n)
    # equal arguments
    if compare(ka, pi, n) == LT and not _hull_has(al, ka, b, n):
        return True
    if pi is ka:
        if _hull_has_all(be, fn_parts(f), aa, n) and lx_less(f, g, ZERO, n):
            return True
        if not _hull_has_all(al, fn_parts(g), b, n):
            return True
    return False


# ----------------------------------------------------------------------
# coefficient sets
# ----------------------------------------------------------------------

def _base_reg(t):
    """Om(1), S, or Om(S+k): regulars present in every hull."""
    return t.kind == 's' or (t.kind == 'om'
                             and (t.base is None or t.base.kind == 's'))


def _psi_shape(t):
    """Rough clause shape of a psi term: 'reg', 'first', 'step' or None."""
    if t.fn.is_empty():
        return 'reg'
    if t.sub[0].kind == 's' and len(t.fn) == 1:
        return 'first'
    if t.sub[0].kind == 'psi' and not t.sub[0].fn.is_empty():
        return 'step'
    return None


def k_set(alpha, seeds, n=1):
    """Coefficient set of alpha over an explicit seed set of terms."""
    ids = {id(x) for x in seeds}
    return _k_generic(alpha, lambda t: id(t) in ids, n)


_kb_memo = {}


def k_below(delta, alpha, n=1):
    """Coefficient set of alpha with every term below delta as a seed."""
    key = (id(delta), id(alpha), n)
    r = _kb_memo.get(key)
    if r is None:
        r = _k_generic(alpha, lambda t: compare(t, delta, n) == LT, n,
                       _below=delta)
        _kb_memo[key] = r
    return r


def _k_generic(alpha, pred, n, _below=None):
    def rec(t):
        if _below is not None:
            return k_below(_below, t, n)
        return _k_generic(t, pred, n)

    k = alpha.kind
    if k in ('zero', 's'):
        return FIN_EMPTY
    if k == 'om':
        if alpha.base is None or alpha.base.kind == 's':
            return FIN_EMPTY
        return FIN_EMPTY if pred(alpha) else TOP
    if k in ('sum', 'phi'):
        return _union([rec(s) for s in alpha.sub])
    # psi
    if pred(alpha):
        return FIN_EMPTY
    pi, aa = alpha.sub
    shape = _psi_shape(alpha)
    if shape == 'reg':
        if _base_reg(pi):
            return _union([rec(aa), rec(pi)], extra=[aa])
        return TOP
    if shape == 'first':
        c, v = alpha.fn.entries[0]
        return _union([rec(aa), rec(c), rec(v)], extra=[aa])
    if shape == 'step':
        subs = [rec(aa), rec(pi)]
        for x in fn_parts(alpha.fn):
            subs.append(rec(x))
        return _union(subs, extra=[aa])
    return TOP


def in_hull(alpha, gamma, seeds, n=1):
    """Whether alpha lies in the hull generated by the seeds, closed under
    collapses with arguments strictly below gamma."""
    return k_set(alpha, seeds, n).all_below(gamma, n)


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

class Verdict:
    __slots__ = ('ok', 'clause', 'reason')

    def __init__(self, ok, clause=None, reason=None):
        self.ok = ok
        self.clause = clause
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return 'Verdict(ok, clause=%s)' % self.clause
        return 'Verdict(rejected: %s)' % self.reason


def is_regular(t):
    """Regular terms: S, any Om constant, or a psi with nonempty function."""
    if t.kind == 's' or t.kind == 'om':
        return True
    return t.kind == 'psi' and not t.fn.is_empty()


def in_psi_class(t):
    """Collapse cardinals: psi terms with nonempty finite function."""
    return t.kind == 'psi' and not t.fn.is_empty()


def _gamma_bounded(a, beta, n):
    """a < (least strongly critical point above beta)?"""
    if a.kind == 'zero':
        return True
    if is_atom(a):
        return compare(a, beta, n) != GT
    return all(_gamma_bounded(s, beta, n) for s in a.sub)


_val_memo = {}


def validate(t, n=1):
    """Check membership of a normalised term tree in the notation system."""
    key = (id(t), n)
    r = _val_memo.get(key)
    if r is None:
        r = _validate(t, n)
        _val_memo[key] = r
    return r


def _bad(reason):
    return Verdict(False, None, reason)


def _validate(t, n):
    k = t.kind
    if k in ('zero', 's'):
        return Verdict(True, 'const')
    if k == 'om':
        if t.base is None:
            return Verdict(True, 'const')
        if not 1 <= t.idx <= n:
            return _bad('Om index offset outside 1..%d' % n)
        if t.base.kind == 's':
            return Verdict(True, 'const')
        if not validate(t.base, n).ok:
            return _bad('Om base does not validate')
        if not in_psi_class(t.base):
            return _bad('Om base is not a collapse cardinal')
        return Verdict(True, 'om-card')
    if k == 'sum':
        for s in t.sub:
            if not is_principal(s):
                return _bad('sum component is not additively principal')
            if not validate(s, n).ok:
                return _bad('sum component does not validate')
        for i in range(len(t.sub) - 1):
            if compare(t.sub[i], t.sub[i + 1], n) == LT:
                return _bad('sum components not weakly descending')
        return Verdict(True, 'sum')
    if k == 'phi':
        b, g = t.sub
        if not (validate(b, n).ok and validate(g, n).ok):
            return _bad('phi component does not validate')
        if compare(b, t, n) != LT or compare(g, t, n) != LT:
            return _bad('phi not in normal form')
        return Verdict(True, 'phi')
    return _validate_psi(t, n)


def _validate_psi(t, n):
    from .theta import to_tnf, theta, osub, below_plus_omega, coeff_condition_ok, lam
    from .fnfun import is_irreducible, less_c, restrict_below
    from .errors import OtnError
    from .terms import e_below_S

    pi, a = t.sub
    f = t.fn
    if not validate(pi, n).ok:
        return _bad('pilot does not validate')
    if not validate(a, n).ok:
        return _bad('argument does not validate')
    for c, v in f.entries:
        if not (validate(c, n).ok and validate(v, n).ok):
            return _bad('finite function component does not validate')
        if compare(c, lam(n), n) != LT:
            return _bad('finite function exponent not below the top constant')
        try:
            if not coeff_condition_ok(to_tnf(v, n)):
                return _bad('finite function value violates the coefficient condition')
        except OtnError:
            return _bad('finite function value outside the stepped-exponential range')

    if f.is_empty():
        if not is_regular(pi):
            return _bad('pilot of a plain collapse must be regular')
        kr = _union([k_below(t, pi, n), k_below(t, a, n)])
        if not kr.all_below(a, n):
            return _bad('coefficient set of pilot/argument not below the argument')
        if _is_card_om(pi):
            if not _gamma_bounded(a, om_reg(pi.base, n), n):
                return _bad('argument exceeds the strongly critical bound of the pilot')
        return Verdict(True, 'psi-reg')

    if pi.kind == 's' and len(f) == 1:
        c, v = f.entries[0]
        kr = _union([k_below(t, v, n), k_below(t, a, n), k_below(t, c, n)])
        if not kr.all_below(a, n):
            return _bad('coefficient set not below the argument')
        return Verdict(True, 'psi-first')

    if pi.kind == 'psi' and not pi.fn.is_empty():
        fpi = pi.fn
        g = f
        if not is_irreducible(g, n):
            return _bad('finite function is reducible')
        found = False
        supp_f = fpi.supp()
        supp_g = g.supp()
        for c in supp_f:
            dcands = [ZERO] + [s for s in supp_f + supp_g
                               if compare(s, c, n) == LT]
            for d in dcands:
                if compare(d, c, n) != LT:
                    continue
                if any(compare(s, d, n) == GT and compare(s, c, n) == LT
                       for s in supp_f):
                    continue
                if any(compare(s, d, n) == GT and compare(s, c, n) == LT
                       for s in supp_g):
                    continue
                if restrict_below(g, d, n) != restrict_below(fpi, d, n):
                    continue
                try:
                    step = theta(osub(c, d), to_tnf(fpi.value_at(c), n), n)
                    if not below_plus_omega(to_tnf(g.value_at(d), n),
                                            to_tnf(fpi.value_at(d), n), step):
                        continue
                    if not less_c(g, c, to_tnf(fpi.value_at(c), n), n):
                        continue
                except OtnError:
                    continue
                found = True
                break
            if found:
                break
        if not found:
            return _bad('no admissible step-down pair of support points')
        krs = [k_below(t, pi, n), k_below(t, a, n)]
        for x in fn_parts(fpi) + fn_parts(g):
            krs.append(k_below(t, x, n))
        if not _union(krs).all_below(a, n):
            return _bad('coefficient set not below the argument')
        for x in fn_parts(g):
            for e in e_below_S(x):
                if compare(e, t, n) != LT:
                    return _bad('collapse component of the function not below the term')
        return Verdict(True, 'psi-step')

    return _bad('psi shape matches no formation clause')


# ----------------------------------------------------------------------
# next regular
# ----------------------------------------------------------------------

class _Sentinel:
    __slots__ = ('name',)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


INFINITY = _Sentinel('INFINITY')
UNKNOWN_REGULAR = _Sentinel('UNKNOWN_REGULAR')


def kappa0():
    """The least collapse cardinal: the minimal first-layer psi term."""
    return mk_psi(S_CONST, ZERO, mk_fn([(ZERO, ONE)]))


def next_regular(alpha, n=1):
    """The least regular term strictly above alpha.

    Returns a Term, INFINITY when no regular term lies above alpha, or
    UNKNOWN_REGULAR when the successor is a collapse cardinal the kernel
    cannot name (callers must treat such blocks as uncapped).
    """
    if compare(alpha, OM1, n) == LT:
        return OM1
    k0 = kappa0()
    if compare(alpha, k0, n) == LT:
        return k0
    if compare(alpha, om_s(n), n) != LT:
        return INFINITY
    cands = [S_CONST] + [om_s(k) for k in range(1, n + 1)]
    for sub in all_subterms(alpha):
        if in_psi_class(sub):
            cands.append(sub)
            for j in range(1, n + 1):
                cands.append(om_reg(sub, j))
        elif sub.kind == 'om':
            cands.append(sub)
    floor = None
    for cand in cands:
        if compare(cand, alpha, n) == GT:
            continue
        if floor is None or compare(cand, floor, n) == GT:
            floor = cand
    succ = None
    if floor is None:
        return UNKNOWN_REGULAR
    if floor.kind == 'psi':
        succ = om_reg(floor, 1)
    elif floor.kind == 's':
        succ = om_s(1)
    elif floor.base is not None and floor.base.kind == 's':
        if floor.idx < n:
            succ = om_s(floor.idx + 1)
        else:
            return INFINITY
    elif floor.base is not None:
        if floor.idx < n:
            succ = om_reg(floor.base, floor.idx + 1)
        else:
            return UNKNOWN_REGULAR
    else:
        return UNKNOWN_REGULAR
    if succ is None or compare(succ, alpha, n) != GT:
        return UNKNOWN_REGULAR
    return succ
