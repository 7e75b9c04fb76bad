"""Command-line front end.

Exit codes: 0 success, 1 validator rejection, 2 parse/usage error,
3 internal property violation (self-test failure).
"""

import argparse
import functools
import json
import sys

from .errors import OtnError, ParseError, IndexError_, OrderViolation, \
    BudgetError
from .terms import parse, to_str, ell
from .order import compare, validate, k_set, k_below, TOP
from .coeff import e_set, g_set, f_set, k_tail
from .closure import enumerate_universe, closure_c, cascade_report, wf_sorted

LT, EQ, GT = -1, 0, 1


def _read_terms(path, n):
    """Term list from a file: newline-separated expressions or a JSON array."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith('['):
        exprs = json.loads(stripped)
    else:
        exprs = [line.strip() for line in text.splitlines() if line.strip()]
    return [parse(e, n) for e in exprs]


def _emit(args, payload, plain_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in plain_lines:
            print(line)


def _cmd_validate(args):
    t = parse(args.expr, args.n)
    v = validate(t, args.n)
    if v.ok:
        _emit(args, {'accepted': True, 'clause': v.clause},
              ['accepted, clause %s' % v.clause])
        return 0
    _emit(args, {'accepted': False, 'reason': v.reason},
          ['rejected: %s' % v.reason])
    return 1


def _cmd_compare(args):
    a = parse(args.a, args.n)
    b = parse(args.b, args.n)
    sym = {LT: '<', EQ: '=', GT: '>'}[compare(a, b, args.n)]
    _emit(args, {'result': sym}, [sym])
    return 0


def _cmd_sort(args):
    ts = _read_terms(args.file, args.n)
    ts.sort(key=functools.cmp_to_key(lambda a, b: compare(a, b, args.n)))
    _emit(args, [to_str(t) for t in ts], [to_str(t) for t in ts])
    return 0


def _cmd_enum(args):
    below = parse(args.below, args.n) if args.below else None
    u = enumerate_universe(args.n, args.max_len, below)
    if args.count_only:
        _emit(args, {'count': len(u)}, [str(len(u))])
    else:
        _emit(args, [to_str(t) for t in u.terms], [to_str(t) for t in u.terms])
    return 0


def _cmd_kset(args):
    t = parse(args.expr, args.n)
    if args.below:
        res = k_below(parse(args.below, args.n), t, args.n)
    elif args.set:
        res = k_set(t, _read_terms(args.set, args.n), args.n)
    else:
        print('kset: one of --below or --set is required', file=sys.stderr)
        return 2
    if res.top:
        _emit(args, {'top': True}, ['TOP'])
    else:
        items = [to_str(x) for x in res.items]
        _emit(args, {'top': False, 'items': items}, items or ['{}'])
    return 0


def _cmd_coeff(args):
    t = parse(args.expr, args.n)
    if args.kind == 'E':
        out = e_set(t)
    elif args.kind == 'G':
        if not args.kappa:
            print('coeff --kind G needs --kappa', file=sys.stderr)
            return 2
        out = g_set(parse(args.kappa, args.n), t, args.n)
    elif args.kind == 'F':
        if not args.delta:
            print('coeff --kind F needs --delta', file=sys.stderr)
            return 2
        out = f_set(parse(args.delta, args.n), t, args.n)
    else:
        if not args.delta:
            print('coeff --kind k needs --delta', file=sys.stderr)
            return 2
        out = k_tail(parse(args.delta, args.n), t, args.n)
    items = [to_str(x) for x in out]
    _emit(args, items, items or ['{}'])
    return 0


def _cmd_closure(args):
    alpha = parse(args.alpha, args.n)
    xs = _read_terms(args.x, args.n)
    u = enumerate_universe(args.n, args.max_len)
    cl = closure_c(alpha, xs, u)
    _emit(args, [to_str(t) for t in cl], [to_str(t) for t in cl])
    return 0


def _cmd_cascade(args):
    xs = _read_terms(args.seed, args.n)
    u = enumerate_universe(args.n, args.max_len)
    rep = cascade_report(u, xs)
    payload = {k: v for k, v in rep.items() if not k.startswith('_')}
    lines = ['stage %d at %s: |w|=%d |c|=%d'
             % (lv['stage'], lv['alpha'], len(lv['w']), len(lv['c']))
             for lv in rep['levels']]
    lines.append('checks: %s' % rep['checks'])
    _emit(args, payload, lines)
    return 0


def _selftest_order(budget, n):
    u = enumerate_universe(n, budget)
    wf_sorted(u.terms, n)
    return len(u)


def _selftest_roundtrip(budget, n):
    u = enumerate_universe(n, budget)
    for t in u.terms:
        if parse(to_str(t), n) is not t:
            raise OrderViolation('round-trip failure', (t,))
    return len(u)


_SUITES = {'order': _selftest_order, 'roundtrip': _selftest_roundtrip}


def _cmd_selftest(args):
    suite = _SUITES.get(args.suite)
    if suite is None:
        print('unknown suite %r (choose from %s)'
              % (args.suite, ', '.join(sorted(_SUITES))), file=sys.stderr)
        return 2
    try:
        count = suite(args.budget, args.n)
    except OrderViolation as exc:
        _emit(args, {'suite': args.suite, 'ok': False, 'error': str(exc)},
              ['FAIL %s: %s' % (args.suite, exc)])
        return 3
    _emit(args, {'suite': args.suite, 'ok': True, 'checked': count},
          ['ok %s (%d terms)' % (args.suite, count)])
    return 0


def _build_parser():
    ap = argparse.ArgumentParser(prog='otn',
                                 description='ordinal notation kernel')
    ap.add_argument('--n', type=int, default=1,
                    help='session parameter N (default 1)')
    ap.add_argument('--json', action='store_true', help='JSON output')
    sub = ap.add_subparsers(dest='cmd', required=True)

    p = sub.add_parser('validate', help='check a term expression')
    p.add_argument('expr')
    p.set_defaults(run=_cmd_validate)

    p = sub.add_parser('compare', help='three-way comparison')
    p.add_argument('a')
    p.add_argument('b')
    p.set_defaults(run=_cmd_compare)

    p = sub.add_parser('sort', help='sort terms from a file')
    p.add_argument('file')
    p.set_defaults(run=_cmd_sort)

    p = sub.add_parser('enum', help='enumerate valid terms')
    p.add_argument('--max-len', type=int, required=True)
    p.add_argument('--below', default=None)
    p.add_argument('--count-only', action='store_true')
    p.set_defaults(run=_cmd_enum)

    p = sub.add_parser('kset', help='coefficient set of a term')
    p.add_argument('--below', default=None)
    p.add_argument('--set', default=None)
    p.add_argument('expr')
    p.set_defaults(run=_cmd_kset)

    p = sub.add_parser('coeff', help='component-set extractors')
    p.add_argument('--kind', choices=['E', 'G', 'F', 'k'], required=True)
    p.add_argument('--kappa', default=None)
    p.add_argument('--delta', default=None)
    p.add_argument('expr')
    p.set_defaults(run=_cmd_coeff)

    p = sub.add_parser('closure', help='relativised closure inside a universe')
    p.add_argument('--alpha', required=True)
    p.add_argument('--x', required=True)
    p.add_argument('--max-len', type=int, required=True)
    p.set_defaults(run=_cmd_closure)

    p = sub.add_parser('cascade', help='stagewise closure cascade report')
    p.add_argument('--seed', required=True)
    p.add_argument('--max-len', type=int, required=True)
    p.set_defaults(run=_cmd_cascade)

    p = sub.add_parser('selftest', help='run an internal property suite')
    p.add_argument('--suite', required=True)
    p.add_argument('--budget', type=int, default=4)
    p.set_defaults(run=_cmd_selftest)
    return ap


def main(argv=None):
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.run(args)
    except (ParseError, IndexError_) as exc:
        print('error: %s' % exc, file=sys.stderr)
        return 2
    except OrderViolation as exc:
        print('property violation: %s' % exc, file=sys.stderr)
        return 3
    except (BudgetError, OtnError, OSError, json.JSONDecodeError) as exc:
        print('error: %s' % exc, file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
