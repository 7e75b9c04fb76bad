"""Term syntax for the ordinal notation kernel.

A term is an immutable, hash-consed tree over the alphabet
{0, S, +, phi, Om, psi}.  Hash-consing means structurally equal terms are
the same object, so `is` doubles as structural equality and id() keys are
stable cache keys.

Node kinds:

* ``zero`` -- the constant 0.
* ``s``    -- the distinguished uncountable-stage constant S.
* ``sum``  -- a weakly descending sum of two or more principal terms.
* ``phi``  -- binary fixed-point hierarchy node phi(b, g).
* ``om``   -- an indexed regular constant: Om(1), Om(S+k), or Om(kappa+k)
              for a collapse term kappa.
* ``psi``  -- a collapse psi_pi^f(a) with finite function f (possibly empty).

Constructors normalise: `osum` performs absorbing addition of descending
sums, and `mk_phi` collapses fixed points so that every constructed tree is
in normal form with respect to + and phi.
"""

from .errors import ParseError, IndexError_

LT, EQ, GT = -1, 0, 1

_TAB = {}


class FiniteFn:
    """A finite partial map from exponent terms to positive value terms.

    Stored as a tuple of (c, v) pairs with c strictly ascending in term
    order.  Immutable and hashable by identity of the component terms.
    """

    __slots__ = ('entries',)

    def __init__(self, entries):
        self.entries = tuple(entries)

    def supp(self):
        return [c for c, _ in self.entries]

    def value_at(self, c):
        """f(c); ZERO when c is outside the support."""
        for d, v in self.entries:
            if d is c:
                return v
        return ZERO

    def is_empty(self):
        return not self.entries

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, FiniteFn) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple((id(c), id(v)) for c, v in self.entries))

    def __repr__(self):
        return 'FiniteFn(%s)' % (','.join(
            '%s:%s' % (to_str(c), to_str(v)) for c, v in self.entries))


EMPTY_FN = FiniteFn(())


class Term:
    __slots__ = ('kind', 'sub', 'idx', 'fn', '_ell')

    def __init__(self, kind, sub, idx, fn):
        self.kind = kind
        self.sub = sub
        self.idx = idx
        self.fn = fn
        self._ell = None

    # -- convenience accessors ------------------------------------------
    @property
    def b(self):
        return self.sub[0]

    @property
    def g(self):
        return self.sub[1]

    @property
    def pi(self):
        return self.sub[0]

    @property
    def a(self):
        return self.sub[1]

    @property
    def base(self):
        """Index base of an `om` node: None for Om(1), else S or a psi term."""
        return self.sub[0] if self.sub else None

    def __repr__(self):
        return 'Term(%s)' % to_str(self)


def _mk(kind, sub=(), idx=0, fn=None):
    key = (kind, tuple(id(s) for s in sub), idx,
           None if fn is None else tuple((id(c), id(v)) for c, v in fn.entries))
    t = _TAB.get(key)
    if t is None:
        t = Term(kind, tuple(sub), idx, fn)
        _TAB[key] = t
    return t


ZERO = _mk('zero')
S_CONST = _mk('s')
OM1 = _mk('om')


def _compare(a, b):
    from .order import compare
    return compare(a, b)


def is_atom(t):
    """Strongly critical leaves of the order: S, Om(...) and psi terms."""
    return t.kind in ('s', 'om', 'psi')


def is_principal(t):
    """Additively principal: everything except 0 and explicit sums."""
    return t.kind not in ('zero', 'sum')


def summands(t):
    if t.kind == 'sum':
        return list(t.sub)
    if t.kind == 'zero':
        return []
    return [t]


def osum(a, b):
    """Ordinal addition of two normal-form terms (absorbing, associative)."""
    if a.kind == 'zero':
        return b
    if b.kind == 'zero':
        return a
    sa = summands(a)
    sb = summands(b)
    hb = sb[0]
    i = len(sa)
    while i > 0 and _compare(sa[i - 1], hb) == LT:
        i -= 1
    parts = sa[:i] + sb
    if len(parts) == 1:
        return parts[0]
    return _mk('sum', tuple(parts))


def osum_list(ts):
    out = ZERO
    for t in ts:
        out = osum(out, t)
    return out


def mk_phi(b, g):
    """phi(b, g), collapsing arguments that are already fixed points."""
    if g.kind == 'phi' and _compare(b, g.sub[0]) == LT:
        return g
    if is_atom(g) and _compare(b, g) == LT:
        return g
    if g.kind == 'zero' and is_atom(b):
        return b
    return _mk('phi', (b, g))


# Built with the raw maker: neither collapses, and going through mk_phi at
# import time would pull in the comparison module before this one is ready.
ONE = _mk('phi', (ZERO, ZERO))
OMEGA = _mk('phi', (ZERO, ONE))


def om_s(k):
    """Om(S+k), the k-th regular stage above S.  k >= 1."""
    if k < 1:
        raise IndexError_('Om index offset must be >= 1, got %d' % k)
    return _mk('om', (S_CONST,), k)


def om_reg(kappa, k):
    """Om(kappa+k) for a collapse term kappa.  k >= 1."""
    if k < 1:
        raise IndexError_('Om index offset must be >= 1, got %d' % k)
    return _mk('om', (kappa,), k)


def mk_psi(pi, a, fn=None):
    if fn is None:
        fn = EMPTY_FN
    return _mk('psi', (pi, a), 0, fn)


def mk_fn(pairs):
    """Build a FiniteFn from (exponent, value) pairs; values must be nonzero."""
    from .errors import ZeroError, ShapeError
    out = []
    for c, v in pairs:
        if v.kind == 'zero':
            raise ZeroError('finite function values must be positive')
        out.append((c, v))
    out.sort(key=_cmp_key())
    for i in range(len(out) - 1):
        if out[i][0] is out[i + 1][0]:
            raise ShapeError('duplicate exponent in finite function')
    return FiniteFn(out) if out else EMPTY_FN


def _cmp_key():
    import functools
    return functools.cmp_to_key(lambda p, q: _compare(p[0], q[0]))


# ----------------------------------------------------------------------
# size measure
# ----------------------------------------------------------------------

def ell(t):
    """Length of a term: the structural size measure used for enumeration."""
    if t._ell is not None:
        return t._ell
    k = t.kind
    if k in ('zero', 's'):
        n = 1
    elif k == 'om':
        if t.base is None or t.base.kind == 's':
            n = 1
        else:
            n = 1 + ell(t.base) + (t.idx - 1)
    elif k == 'sum':
        n = sum(ell(s) for s in t.sub) + (len(t.sub) - 1)
    elif k == 'phi':
        n = 1 + ell(t.sub[0]) + ell(t.sub[1])
    else:  # psi
        n = 1 + ell(t.sub[0]) + ell(t.sub[1])
        for c, v in t.fn.entries:
            n += ell(c) + ell(v)
    t._ell = n
    return n


# ----------------------------------------------------------------------
# subterm structure
# ----------------------------------------------------------------------

def fn_parts(fn):
    """All component terms of a finite function: exponents and values."""
    out = []
    for c, v in fn.entries:
        out.append(c)
        out.append(v)
    return out


def imm_subterms(t):
    """Immediate subterms, as a list without duplicates."""
    k = t.kind
    if k in ('zero', 's'):
        return []
    if k == 'om':
        if t.base is None or t.base.kind == 's':
            return []
        return [t.base]
    if k in ('sum', 'phi'):
        return _dedup(t.sub)
    # psi
    return _dedup(list(t.sub) + fn_parts(t.fn))


def _dedup(ts):
    seen = set()
    out = []
    for t in ts:
        if id(t) not in seen:
            seen.add(id(t))
            out.append(t)
    return out


def all_subterms(t):
    """Transitive subterm closure including t itself."""
    seen = set()
    out = []

    def walk(u):
        if id(u) in seen:
            return
        seen.add(id(u))
        out.append(u)
        for v in imm_subterms(u):
            walk(v)

    walk(t)
    return out


def e_below_S(t):
    """The set of collapse components of t lying at or below stage S.

    Base constants contribute nothing; an Om(kappa+k) contributes {kappa};
    a psi term contributes itself when its pilot is at or below S, and
    otherwise the components of its argument.
    """
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
            out.extend(e_below_S(s))
        return _dedup(out)
    # psi
    if t.fn.is_empty():
        if _compare(t.pi, S_CONST) != GT:
            return [t]
        return e_below_S(t.a)
    return [t]


# ----------------------------------------------------------------------
# printing
# ----------------------------------------------------------------------

def to_str(t):
    k = t.kind
    if k == 'zero':
        return '0'
    if k == 's':
        return 'S'
    if k == 'sum':
        return '+'.join(to_str(s) for s in t.sub)
    if k == 'phi':
        if t is ONE:
            return '1'
        if t is OMEGA:
            return 'w'
        return 'phi(%s,%s)' % (to_str(t.sub[0]), to_str(t.sub[1]))
    if k == 'om':
        if t.base is None:
            return 'Om(1)'
        if t.base.kind == 's':
            return 'Om(S+%d)' % t.idx
        return 'Om(%s+%d)' % (to_str(t.base), t.idx)
    # psi
    if t.fn.is_empty():
        return 'psi(%s;%s)' % (to_str(t.pi), to_str(t.a))
    body = ','.join('%s:%s' % (to_str(c), to_str(v)) for c, v in t.fn.entries)
    return 'psi[%s](%s;%s)' % (body, to_str(t.pi), to_str(t.a))


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------

class _P:
    def __init__(self, text, n_param):
        self.text = text
        self.i = 0
        self.n = n_param

    def err(self, msg):
        raise ParseError(msg, self.i)

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ''

    def eat(self, ch):
        self.skip_ws()
        if not self.text.startswith(ch, self.i):
            self.err("expected '%s'" % ch)
        self.i += len(ch)

    def try_eat(self, ch):
        self.skip_ws()
        if self.text.startswith(ch, self.i):
            self.i += len(ch)
            return True
        return False

    def nat(self):
        self.skip_ws()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.err('expected a number')
        n = int(self.text[self.i:j])
        self.i = j
        return n

    def term(self):
        t = self.primary()
        while self.try_eat('+'):
            t = osum(t, self.primary())
        return t

    def primary(self):
        self.skip_ws()
        c = self.peek()
        if c == '0':
            self.i += 1
            return ZERO
        if c == '1':
            self.i += 1
            return ONE
        if c == 'w':
            self.i += 1
            if self.try_eat('^'):
                return mk_phi(ZERO, self.primary())
            return OMEGA
        if self.text.startswith('phi', self.i):
            self.i += 3
            self.eat('(')
            b = self.term()
            self.eat(',')
            g = self.term()
            self.eat(')')
            return mk_phi(b, g)
        if self.text.startswith('psi', self.i):
            self.i += 3
            fn = EMPTY_FN
            if self.try_eat('['):
                pairs = []
                while True:
                    c1 = self.term()
                    self.eat(':')
                    v1 = self.term()
                    pairs.append((c1, v1))
                    if not self.try_eat(','):
                        break
                self.eat(']')
                fn = mk_fn(pairs)
            self.eat('(')
            pi = self.term()
            self.eat(';')
            a = self.term()
            self.eat(')')
            return mk_psi(pi, a, fn)
        if self.text.startswith('Om', self.i):
            self.i += 2
            self.eat('(')
            t = self.om_index()
            self.eat(')')
            return t
        if c == 'S':
            self.i += 1
            return S_CONST
        self.err('expected a term')

    def om_index(self):
        self.skip_ws()
        if self.peek() == '1':
            save = self.i
            self.i += 1
            if self.peek() == ')':
                return OM1
            self.i = save
        if self.peek() == 'S':
            save = self.i
            self.i += 1
            if self.peek() == '+':
                self.eat('+')
                k = self.nat()
                self.check_idx(k)
                return om_s(k)
            self.i = save
        kappa = self.primary()
        while True:
            self.eat('+')
            self.skip_ws()
            if self.i < len(self.text) and self.text[self.i].isdigit():
                save = self.i
                k = self.nat()
                if self.peek() == ')':
                    self.check_idx(k)
                    return om_reg(kappa, k)
                self.i = save
            kappa = osum(kappa, self.primary())

    def check_idx(self, k):
        if not 1 <= k <= self.n:
            raise IndexError_('Om index offset %d outside 1..%d' % (k, self.n))


def parse(text, n_param=1):
    p = _P(text, n_param)
    t = p.term()
    p.skip_ws()
    if p.i != len(text):
        p.err('trailing input')
    return t


# ----------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------

def to_json(t):
    k = t.kind
    if k == 'zero':
        return {'k': '0'}
    if k == 's':
        return {'k': 'S'}
    if k == 'sum':
        return {'k': 'sum', 'ts': [to_json(s) for s in t.sub]}
    if k == 'phi':
        return {'k': 'phi', 'b': to_json(t.sub[0]), 'g': to_json(t.sub[1])}
    if k == 'om':
        return {'k': 'om',
                'base': None if t.base is None else to_json(t.base),
                'n': t.idx if t.base is not None else 1}
    return {'k': 'psi', 'pi': to_json(t.pi), 'a': to_json(t.a),
            'f': [[to_json(c), to_json(v)] for c, v in t.fn.entries]}


def from_json(d):
    k = d.get('k')
    if k == '0':
        return ZERO
    if k == 'S':
        return S_CONST
    if k == 'sum':
        return osum_list([from_json(x) for x in d['ts']])
    if k == 'phi':
        return mk_phi(from_json(d['b']), from_json(d['g']))
    if k == 'om':
        if d.get('base') is None:
            return OM1
        base = from_json(d['base'])
        if base.kind == 's':
            return om_s(d['n'])
        return om_reg(base, d['n'])
    if k == 'psi':
        fn = mk_fn([(from_json(c), from_json(v)) for c, v in d.get('f', [])])
        return mk_psi(from_json(d['pi']), from_json(d['a']), fn)
    raise ParseError('unknown JSON node kind: %r' % (k,))
