import pytest

from otn.errors import ParseError, IndexError_, ZeroError, ShapeError
from otn.terms import (ZERO, ONE, OMEGA, S_CONST, OM1, parse, to_str, ell,
                       osum, mk_phi, mk_psi, mk_fn, om_s, om_reg, summands,
                       imm_subterms, e_below_S, to_json, from_json, EMPTY_FN)


def t(s, n=1):
    return parse(s, n)


def test_parse_basics():
    assert parse('0') is ZERO
    assert parse('1') is ONE
    assert parse('w') is OMEGA
    assert parse('S') is S_CONST
    assert parse('Om(1)') is OM1
    assert parse('Om(S+1)') is om_s(1)
    assert parse('psi(Om(1);0)') is mk_psi(OM1, ZERO)


def test_parse_sugar():
    assert parse('1') is mk_phi(ZERO, ZERO)
    assert parse('w') is mk_phi(ZERO, ONE)
    assert parse('w^w') is mk_phi(ZERO, OMEGA)


def test_parse_fn_and_nested_index():
    x = parse('psi[0:1](S;0)')
    assert x.fn.entries == ((ZERO, ONE),)
    y = parse('Om(psi[0:1](S;0)+1)')
    assert y.kind == 'om' and y.base is x and y.idx == 1


def test_parse_errors():
    with pytest.raises(ParseError):
        parse('phi(')
    with pytest.raises(ParseError):
        parse('0 + ')
    with pytest.raises(ParseError):
        parse('0 junk')
    with pytest.raises(IndexError_):
        parse('Om(S+2)', 1)
    assert parse('Om(S+2)', 2) is om_s(2)


def test_print_roundtrip_handpicked():
    for s in ['0', '1', 'w', 'S', 'Om(1)', 'Om(S+1)', 'S+w+1',
              'phi(1,w)', 'psi(Om(1);0)', 'psi[0:1](S;0)',
              'Om(psi[0:1](S;0)+1)', 'psi[1:w](S;S)']:
        x = t(s)
        assert parse(to_str(x)) is x


def test_sum_normalisation():
    # addition is absorbing: smaller head summands vanish
    assert osum(ONE, OMEGA) is OMEGA
    assert osum(OMEGA, ONE) is parse('w+1')
    assert summands(parse('w+w+1')) == [OMEGA, OMEGA, ONE]
    assert parse('1+w+1') is parse('w+1')


def test_phi_collapse():
    # phi of a fixed point collapses to the fixed point
    assert mk_phi(ZERO, parse('phi(1,0)')) is parse('phi(1,0)')
    assert mk_phi(ZERO, OM1) is OM1
    assert mk_phi(OM1, ZERO) is OM1
    assert mk_phi(ZERO, ZERO) is ONE


def test_mk_fn_rejects_bad_entries():
    with pytest.raises(ZeroError):
        mk_fn([(ZERO, ZERO)])
    with pytest.raises(ShapeError):
        mk_fn([(ZERO, ONE), (ZERO, OMEGA)])


def test_ell():
    assert ell(ZERO) == 1
    assert ell(parse('phi(0,0)')) == 3
    assert ell(S_CONST) == 1
    assert ell(om_s(1)) == 1
    assert ell(parse('w+1')) == 9  # phi(0,phi(0,0)) + phi(0,0) + one plus
    kap = parse('psi[0:1](S;0)')
    assert ell(kap) == 7
    assert ell(om_reg(kap, 1)) == 8
    for s in ['phi(1,w)', 'psi[0:1](S;0)', 'S+S']:
        x = t(s)
        for u in imm_subterms(x):
            assert ell(u) < ell(x)


def test_imm_subterms():
    assert imm_subterms(ZERO) == []
    assert imm_subterms(parse('phi(S,w)')) == [S_CONST, OMEGA]
    assert imm_subterms(parse('psi(Om(1);0)')) == [OM1, ZERO]
    kap = parse('psi[0:1](S;0)')
    assert imm_subterms(om_reg(kap, 1)) == [kap]
    assert set(map(id, imm_subterms(parse('psi[0:1](S;w)')))) == \
        {id(S_CONST), id(OMEGA), id(ZERO), id(ONE)}


def test_e_below_S():
    assert e_below_S(om_s(1)) == []
    kap = parse('psi[0:1](S;0)')
    assert e_below_S(om_reg(kap, 1)) == [kap]
    p = parse('psi(Om(1);0)')
    assert e_below_S(p) == [p]
    # pilot above S: recurse into the argument
    q = mk_psi(om_s(1), p, EMPTY_FN)
    assert e_below_S(q) == [p]


def test_json_roundtrip():
    for s in ['0', 'S', 'w+1', 'phi(1,w)', 'Om(1)', 'Om(S+1)',
              'psi[0:1](S;0)', 'Om(psi[0:1](S;0)+1)']:
        x = t(s)
        assert from_json(to_json(x)) is x
