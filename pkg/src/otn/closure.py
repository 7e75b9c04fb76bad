"""Finite-fragment laboratory: enumeration, closures and reports.

`enumerate_universe` generates every validated term up to a length budget,
producing a sorted, downward-closed `Universe`.  On top of it the module
computes relativised closures (`closure_c`), audits the order on finite
sets (`wf_sorted`), and produces the distinguished-set and cascade
diagnostics.  All reports carry an explicit truncation disclaimer: a
finite universe can only give necessary conditions for the limit notions
it shadows.
"""

import functools
import os

from .errors import BudgetError, OrderViolation
from .terms import (ZERO, S_CONST, OM1, om_s, om_reg, mk_phi, mk_psi, osum,
                    FiniteFn, EMPTY_FN, summands, is_principal, fn_parts,
                    imm_subterms, ell, to_str)
from .order import compare, validate, is_regular, in_psi_class, next_regular, \
    INFINITY, UNKNOWN_REGULAR
from .theta import lam

LT, EQ, GT = -1, 0, 1

DEFAULT_BUDGET = 10 ** 7

TRUNCATION_NOTE = ('results are computed inside a finite, length-truncated '
                   'universe and are necessary conditions only')


def _budget():
    try:
        return int(os.environ.get('OTN_BUDGET', ''))
    except ValueError:
        return DEFAULT_BUDGET


def _sort_terms(ts, n):
    return sorted(ts, key=functools.cmp_to_key(lambda a, b: compare(a, b, n)))


class Universe:
    """A sorted, validated, downward-closed finite fragment of the system."""

    __slots__ = ('n_param', 'max_len', 'terms', 'index')

    def __init__(self, n_param, max_len, terms):
        self.n_param = n_param
        self.max_len = max_len
        self.terms = tuple(terms)
        self.index = {id(t): i for i, t in enumerate(self.terms)}

    def __contains__(self, t):
        return id(t) in self.index

    def __len__(self):
        return len(self.terms)

    def rank(self, t):
        return self.index[id(t)]

    def __repr__(self):
        return 'Universe(n=%d, max_len=%d, %d terms)' % (
            self.n_param, self.max_len, len(self.terms))


class _Enum:
    """Length-indexed candidate generation with a global candidate budget."""

    def __init__(self, n, budget):
        self.n = n
        self.budget = budget
        self.spent = 0
        self.by_len = {}        # length -> list of validated terms
        self.fn_memo = {}       # (weight, id(min_exp)) -> list of entry tuples

    def _charge(self, k=1):
        self.spent += k
        if self.spent > self.budget:
            raise BudgetError('candidate budget %d exceeded' % self.budget)

    def terms_up_to(self, top):
        for length in range(1, top + 1):
            if length not in self.by_len:
                self.by_len[length] = self._gen(length)
        out = []
        for length in range(1, top + 1):
            out.extend(self.by_len[length])
        return out

    def _pool(self, length):
        return self.by_len.get(length, [])

    def _gen(self, length):
        n = self.n
        found = []
        seen = set()

        def keep(t):
            self._charge()
            if ell(t) != length or id(t) in seen:
                return
            if validate(t, n).ok:
                seen.add(id(t))
                found.append(t)

        if length == 1:
            for t in [ZERO, OM1, S_CONST] + [om_s(k) for k in range(1, n + 1)]:
                keep(t)
            return found

        # sums: principal head of length i, principal-or-sum tail of the rest
        for i in range(1, length - 1):
            for h in self._pool(i):
                if not is_principal(h):
                    continue
                for t in self._pool(length - 1 - i):
                    if t.kind == 'zero':
                        continue
                    if compare(h, summands(t)[0], n) == LT:
                        continue
                    keep(osum(h, t))

        # phi pairs
        for i in range(1, length - 1):
            for b in self._pool(i):
                for g in self._pool(length - 1 - i):
                    keep(mk_phi(b, g))

        # Om towers over collapse cardinals
        for k in range(1, n + 1):
            for base in self._pool(length - 1 - (k - 1)):
                if in_psi_class(base):
                    keep(om_reg(base, k))

        # psi terms: regular pilots only (every formation clause needs one)
        for i in range(1, length - 1):
            pilots = [p for p in self._pool(i) if is_regular(p)]
            if not pilots:
                continue
            for rest in range(0, length - 1 - i):
                j = length - 1 - i - rest   # argument length, always >= 1
                args = self._pool(j)
                if not args:
                    continue
                for fn in self._fns(rest, None):
                    for pi in pilots:
                        for a in args:
                            keep(mk_psi(pi, a, fn))
        return found

    def _fns(self, weight, min_exp):
        """Finite functions of total component length `weight`, exponents
        strictly above min_exp, as entry tuples (ascending)."""
        if weight == 0:
            return [EMPTY_FN] if min_exp is None else [None]
        key = (weight, id(min_exp))
        got = self.fn_memo.get(key)
        if got is not None:
            return got
        big = lam(self.n)
        out = []
        for i in range(1, weight):
            for c in self._pool(i):
                if compare(c, big, self.n) != LT:
                    continue
                if min_exp is not None and compare(c, min_exp, self.n) != GT:
                    continue
                for j in range(1, weight - i + 1):
                    head_vals = [v for v in self._pool(j) if v.kind != 'zero']
                    rest = weight - i - j
                    if rest == 0:
                        for v in head_vals:
                            self._charge()
                            out.append(FiniteFn(((c, v),)))
                    else:
                        for sub in self._fns(rest, c):
                            if sub is None:
                                continue
                            for v in head_vals:
                                self._charge()
                                out.append(FiniteFn(((c, v),) + sub.entries))
        self.fn_memo[key] = out
        return out


_universe_memo = {}


def enumerate_universe(n_param, max_len, upper_bound=None):
    """All validated terms of length at most max_len, sorted ascending."""
    if max_len < 1:
        raise BudgetError('max_len must be at least 1')
    key = (n_param, max_len)
    terms = _universe_memo.get(key)
    if terms is None:
        gen = _Enum(n_param, _budget())
        terms = _sort_terms(gen.terms_up_to(max_len), n_param)
        _universe_memo[key] = terms
    if upper_bound is not None:
        terms = [t for t in terms if compare(t, upper_bound, n_param) == LT]
    return Universe(n_param, max_len, terms)


# ----------------------------------------------------------------------
# closures
# ----------------------------------------------------------------------

def closure_c(alpha, X, U):
    """The closure of the base constants and X below alpha inside U.

    Least subset of U.terms containing the base constants and X cut below
    alpha, closed under +, phi, the Om tower over members, and collapses
    whose pilot exceeds alpha and whose components are already inside.
    """
    n = U.n_param
    inside = set()
    for t in U.terms:
        if t.kind in ('zero', 's'):
            inside.add(id(t))
        elif t.kind == 'om' and (t.base is None or t.base.kind == 's'):
            inside.add(id(t))
    for x in X:
        if id(x) in U.index and compare(x, alpha, n) == LT:
            inside.add(id(x))

    changed = True
    while changed:
        changed = False
        for t in U.terms:
            if id(t) in inside:
                continue
            k = t.kind
            if k in ('sum', 'phi'):
                ok = all(id(s) in inside for s in t.sub)
            elif k == 'om':
                ok = t.base is not None and id(t.base) in inside
            elif k == 'psi':
                ok = (compare(t.pi, alpha, n) == GT
                      and id(t.pi) in inside and id(t.a) in inside
                      and all(id(x) in inside for x in fn_parts(t.fn)))
            else:
                ok = False
            if ok:
                inside.add(id(t))
                changed = True
    return [t for t in U.terms if id(t) in inside]


# ----------------------------------------------------------------------
# order audit / well-founded part on fragments
# ----------------------------------------------------------------------

def wf_sorted(X, n=1):
    """Audit the order on a finite set and return the sorted chain.

    On a finite linear fragment the well-founded part is the whole set;
    the value of the operation is the consistency audit, which raises
    OrderViolation with a minimal witness when the order misbehaves.
    """
    xs = list(X)
    for x in xs:
        if compare(x, x, n) != EQ:
            raise OrderViolation('irreflexivity failure', (x,))
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            c = compare(x, y, n)
            if c != -compare(y, x, n):
                raise OrderViolation('antisymmetry failure', (x, y))
            if c == EQ and x is not y:
                raise OrderViolation('distinct terms compare equal', (x, y))
    chain = _sort_terms(xs, n)
    for a in chain:
        for b in chain:
            if compare(a, b, n) != LT:
                continue
            for c in chain:
                if compare(b, c, n) == LT and compare(a, c, n) != LT:
                    raise OrderViolation('transitivity failure', (a, b, c))
    return {
        'size': len(chain),
        'chain': [to_str(t) for t in chain],
        'terms': chain,
        'wf_is_whole': True,
        'note': 'finite fragment: the well-founded part is the entire set',
    }


# ----------------------------------------------------------------------
# distinguished-set diagnostics
# ----------------------------------------------------------------------

def _below_cap(t, cap, n):
    """t < cap, where cap may be a term or an uncapped sentinel."""
    if cap is INFINITY or cap is UNKNOWN_REGULAR:
        return True
    return compare(t, cap, n) == LT


def distinguished_report(X, U):
    """Per-level comparison of the closure of X with X itself.

    For each alpha in U at or below some member of X, compares the
    closure cut below the next regular against X cut the same way.  The
    report never claims the distinguished-set property outright: inside a
    truncated universe, agreement is a necessary condition only.
    """
    n = U.n_param
    xs = [x for x in X if id(x) in U.index]
    rows = []
    all_equal = True
    for alpha in U.terms:
        if not any(compare(alpha, x, n) != GT for x in xs):
            continue
        cap = next_regular(alpha, n)
        cl = closure_c(alpha, xs, U)
        lhs = [t for t in cl if _below_cap(t, cap, n)]
        rhs = [x for x in xs if _below_cap(x, cap, n)]
        lhs_ids = {id(t) for t in lhs}
        rhs_ids = {id(t) for t in rhs}
        missing = [t for t in rhs if id(t) not in lhs_ids]
        extra = [t for t in lhs if id(t) not in rhs_ids]
        equal = not missing and not extra
        all_equal = all_equal and equal
        rows.append({
            'alpha': to_str(alpha),
            'alpha_plus': (cap.name if cap is INFINITY or cap is UNKNOWN_REGULAR
                           else to_str(cap)),
            'equal': equal,
            'missing': [to_str(t) for t in missing],
            'extra': [to_str(t) for t in extra],
        })
    return {
        'config': {'n': n, 'max_len': U.max_len},
        'x': [to_str(t) for t in xs],
        'rows': rows,
        'all_equal': all_equal,
        'disclaimer': TRUNCATION_NOTE,
    }


# ----------------------------------------------------------------------
# cascade
# ----------------------------------------------------------------------

def cascade_report(U, X_seed):
    """The stagewise closure cascade over the tower above S.

    Starting from the seed cut below S, each stage closes at the next
    tower constant and cuts back down; the report records every stage and
    checks that the closures shrink, the cuts grow, and each closure cut
    at its own stage reproduces the cut it started from.
    """
    n = U.n_param
    w_cur = [x for x in X_seed
             if id(x) in U.index and compare(x, S_CONST, n) == LT]
    levels = []
    closures = []
    cuts = [w_cur]
    alphas = [S_CONST] + [om_s(k) for k in range(1, n + 1)]
    for i, alpha in enumerate(alphas):
        cl = closure_c(alpha, cuts[i], U)
        closures.append(cl)
        if i + 1 < len(alphas):
            nxt = [t for t in cl if compare(t, alphas[i + 1], n) == LT]
        else:
            nxt = list(cl)  # the cut above the top stage is unbounded
        cuts.append(nxt)
        levels.append({
            'stage': i,
            'alpha': to_str(alpha),
            'w': [to_str(t) for t in cuts[i]],
            'c': [to_str(t) for t in cl],
        })

    def subset(a, b):
        ids = {id(t) for t in b}
        return all(id(t) in ids for t in a)

    checks = {
        'closures_decreasing': all(
            subset(closures[i + 1], closures[i])
            for i in range(len(closures) - 1)),
        'cuts_increasing': all(
            subset(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1)),
        'closure_cut_reproduces': all(
            sorted(to_str(t) for t in cuts[i]) ==
            sorted(to_str(t) for t in closures[i]
                   if compare(t, alphas[i], n) == LT)
            for i in range(len(closures))),
    }
    return {
        'config': {'n': n, 'max_len': U.max_len},
        'seed': [to_str(t) for t in X_seed],
        'levels': levels,
        'checks': checks,
        'ok': all(checks.values()),
        'disclaimer': TRUNCATION_NOTE,
        '_closures': closures,
        '_cuts': cuts,
    }
