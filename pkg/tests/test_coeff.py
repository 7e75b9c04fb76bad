from otn.terms import ZERO, ONE, OMEGA, S_CONST, OM1, parse, om_s, om_reg
from otn.coeff import pd, prec, preceq, e_set, g_set, f_set, k_tail


def t(s):
    return parse(s)


def test_pd():
    assert pd(t('psi(Om(1);0)')) is OM1
    assert pd(t('psi[0:1](S;0)')) is S_CONST
    assert pd(S_CONST) is None
    assert pd(OMEGA) is None


def test_prec():
    kap = t('psi[0:1](S;0)')
    two = t('psi(psi[0:1](S;0);0)')
    assert prec(kap, S_CONST)
    assert prec(two, kap)
    assert prec(two, S_CONST)  # two steps
    assert not prec(S_CONST, kap)
    assert preceq(kap, kap)
    assert not prec(kap, kap)


def test_e_set():
    assert e_set(ZERO) == []
    assert e_set(S_CONST) == []
    assert e_set(om_s(1)) == []
    p = t('psi(Om(1);0)')
    assert e_set(p) == [p]
    kap = t('psi[0:1](S;0)')
    assert e_set(om_reg(kap, 1)) == [kap]
    # sums and phi distribute
    q = t('psi(S;0)')
    assert set(map(id, e_set(t('psi(S;0)+psi(Om(1);0)')))) == {id(p), id(q)}
    assert e_set(t('phi(1,w)')) == []


def test_g_set():
    kap = t('psi[0:1](S;0)')
    two = t('psi(psi[0:1](S;0);0)')
    # pilot chain through kappa: the term itself
    assert g_set(kap, two) == [two]
    assert g_set(S_CONST, kap) == [kap]
    # kappa below the pilot: open the components and keep chain members
    assert g_set(kap, t('psi(S;psi(psi[0:1](S;0);0))')) == [two]
    # members must sit strictly below kappa in the pilot order
    p = t('psi(Om(1);0)')
    assert g_set(p, t('psi(S;psi(Om(1);0))')) == []
    assert g_set(kap, p) == []  # pilot Om(1), no chain through kappa


def test_f_set():
    kap = t('psi[0:1](S;0)')
    p = t('psi(Om(1);0)')
    # p < kap: kept whole
    assert f_set(kap, p) == [p]
    # kap >= kap: opened into components; psi-free pieces vanish
    assert f_set(kap, kap) == []
    big = t('psi(S;psi(Om(1);0))')
    assert f_set(kap, big) == [p]


def test_k_tail():
    kap = t('psi[0:1](S;0)')
    p = t('psi(Om(1);0)')
    assert k_tail(kap, p) == []
    big = t('psi(S;psi(Om(1);0))')
    assert k_tail(kap, big) == [big]
    assert k_tail(p, big) == [big, p]
