"""Acceptance criteria, one test each; a summary line per criterion is printed at the end of the run.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import time
from contextlib import contextmanager

from conftest import ACCEPTANCE_LINES
from weylsym import report as rp
from weylsym.cli import dumps, run_suite
from weylsym.discops import (U_METHODS, annihilator_generators, check_remark_recurrences, check_symfun_layer,
                             check_u_special_values, dual_pairing, in_annihilator, sigma_kernel_dimension,
                             u_pq)
from weylsym.poly import SIGMA, Poly
from weylsym.w2bridge import (TwistedElement, W2Element, bernstein_witness, check_displays,
                              factorization_monomials, delta_factor, lemma_14_8_check, twisted_apply,
                              _exponents_up_to)
from weylsym.weyl import WeylElement as W, antisymmetrize

OK = (rp.PASS, rp.PASS_SIGN_FLIP)


@contextmanager
def criterion(n, label):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {label} ({time.perf_counter() - start:.2f}s)"
        ACCEPTANCE_LINES[n] = line
        print(line)


def all_ok(items):
    bad = [i for i in items if i["status"] not in OK]
    assert not bad, bad[:3]


def test_criterion_01_pairing_constants():
    with criterion(1, "dual pairing 2, 12, 288, 34560 for k = 2..5"):
        start = time.perf_counter()
        assert [dual_pairing(k) for k in (2, 3, 4, 5)] == [2, 12, 288, 34560]
        assert time.perf_counter() - start < 60


def test_criterion_02_u_four_way():
    with criterion(2, "u_{p,q} four-way agreement, p <= 6, q <= 4, k in {2,3,4}"):
        start = time.perf_counter()
        for k in (2, 3, 4):
            for p in range(7):
                for q in range(5):
                    vals = [u_pq(k, p, q, m) for m in U_METHODS]
                    assert all(v == vals[0] for v in vals), (k, p, q)
        assert time.perf_counter() - start < 120


def test_criterion_03_u_special_values():
    with criterion(3, "u_{p,q} vanishing, q = 0 and q = 1 formulas, k <= 4"):
        for k in (2, 3, 4):
            items = check_u_special_values(k, 0)
            assert len(items) == 1 + 9 + 7
            all_ok(items)


def test_criterion_04_generators_and_recurrences():
    with criterion(4, "generators kill delta; recurrences in p and q, k <= 4"):
        for k in (2, 3, 4):
            gens = annihilator_generators(k)
            assert len(gens) == (k + 1) * k
            assert all(in_annihilator(g) for g in gens)
            items = check_remark_recurrences(k, 0)
            assert {i["item_id"] for i in items} >= {f"k.p0.q{q}" for q in range(k, k + 3)}
            assert {i["item_id"] for i in items} >= {f"j.op.p{p}.q1" for p in range(k, k + 4)}
            all_ok(items)


def test_criterion_05_import_kernel():
    with criterion(5, "kernel dimension 1 at d = 0, 0 for d in 1..5, k in {2,3,4}"):
        start = time.perf_counter()
        for k in (2, 3, 4):
            assert [sigma_kernel_dimension(k, d) for d in range(6)] == [1, 0, 0, 0, 0, 0]
        assert time.perf_counter() - start < 120


def test_criterion_06_factorization():
    with criterion(6, "delta_factor on antisymmetrized monomials; three k=2 displays up to sign"):
        for k in (2, 3):
            count = 0
            for a, b in factorization_monomials(k):
                A = antisymmetrize(W.monomial(a, b))
                if A.is_zero():
                    continue
                delta_factor(A)
                count += 1
            assert count > 0
        items = check_displays(0)
        assert len(items) == 3
        all_ok(items)
        assert all("orientation" in i for i in items)


def test_criterion_07_lemma():
    with criterion(7, "delta^(2q-1) pullback(Q) antisymmetric in W1, order <= 2, k in {2,3}"):
        for k in (2, 3):
            for g in _exponents_up_to(k, 2):
                for b in _exponents_up_to(k, 2):
                    if any(b):
                        res = lemma_14_8_check(W2Element.monomial(g, b))
                        assert res, (k, g, b, res.witness)


def test_criterion_08_bernstein():
    with criterion(8, "Bernstein witness sends delta to delta / Delta, k in {2,3}"):
        for k in (2, 3):
            P = bernstein_witness(k)
            got = twisted_apply(P, TwistedElement.delta(k))
            assert got == TwistedElement(Poly.const(SIGMA(k), 1), 1)


def test_criterion_09_suites_and_golden():
    with criterion(9, "suites (a)-(l) and transport/twisted invariants never fail; reports byte-identical"):
        for k in (2, 3, 4):
            first = run_suite(k, "all", 0)
            assert first["summary"][rp.FAIL] == 0
            assert dumps(first) == dumps(run_suite(k, "all", 0))


def test_criterion_10_symfun_layer():
    with criterion(10, "d_h N_p, Sigma_1 M_d, M_d = h_d for p, d <= 8, k <= 4"):
        for k in (1, 2, 3, 4):
            all_ok(check_symfun_layer(k, 0, top=8))
