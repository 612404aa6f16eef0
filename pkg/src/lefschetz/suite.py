"""Batch verification of the quadratic-family results and the degree >= 3 examples."""

from __future__ import annotations

from .engine import check_slp, check_wlp, hf_gap
from .ideals import family_ideal, mu_to_family, power_family
from .inverse import (
    apply_derivation,
    ell,
    identity_check,
    in_inverse_system,
    witness_fd_verifies,
    witness_n4,
    witness_n5,
)
from .linalg import QQ, FieldSpec, is_prime
from .quotient import build_quotient
from .search import FixtureCheck, FixtureReport, verify_sec5_fixtures
from .sequences import IntSequence, closed_form_hs, is_class_H, is_mid_heavy, shape_report


def _triples(n_max: int):
    for n in range(2, n_max + 1):
        for j in range(2, n + 1):
            for i in range(1, j):
                yield n, i, j


def _all(name: str, results) -> FixtureCheck:
    bad = [str(r) for r, ok in results if not ok]
    return FixtureCheck(name, "ok", "ok" if not bad else "failed: " + ", ".join(bad[:5]))


def verify_suite(level: str = "fast", progress=None) -> FixtureReport:
    """Run every desk-scale claim; ``full`` widens ranges and adds the slow fixtures."""
    n_hs, n_slp, n_char = (9, 7, 6) if level == "full" else (7, 5, 5)
    checks = []

    checks.append(_all(
        "Hilbert series of the quadratic family matches the closed form",
        (((n, i, j), build_quotient(family_ideal(n, i, j)).hilbert == closed_form_hs(n, i, j))
         for n, i, j in _triples(n_hs)),
    ))

    def shape_ok(n, i, j):
        s = closed_form_hs(n, i, j)
        rep = shape_report(s)
        return (rep.unimodal and rep.log_concave and rep.mid_heavy and rep.class_H
                and rep.symmetric == (j - i - 1 == 1))

    checks.append(_all(
        "family Hilbert series are unimodal, log-concave, mid-heavy, class H",
        (((n, i, j), shape_ok(n, i, j)) for n, i, j in _triples(n_hs)),
    ))
    checks.append(FixtureCheck(
        "(1,1,1) is class H but not mid-heavy", "ok",
        "ok" if is_class_H(IntSequence([1, 1, 1])) and not is_mid_heavy(IntSequence([1, 1, 1])) else "failed",
    ))
    checks.append(_all(
        "family ideals have the SLP over q",
        (((n, i, j), check_slp(family_ideal(n, i, j), QQ).passed) for n, i, j in _triples(n_slp)),
    ))

    def char_ok(n, i, j):
        ideal = family_ideal(n, i, j)
        D = build_quotient(ideal).socle_degree
        return all(check_slp(ideal, FieldSpec(p)).passed for p in range(D + 1, 14) if is_prime(p))

    checks.append(_all(
        "family ideals have the SLP over F_p for D < p <= 13",
        (((n, i, j), char_ok(n, i, j)) for n, i, j in _triples(n_char)),
    ))
    checks.append(_all(
        "every admissible generator count has an SLP quadratic ideal",
        (((n, mu), len(mu_to_family(n, mu)) == mu and check_slp(mu_to_family(n, mu), QQ).passed)
         for n in range(2, n_slp + 1) for mu in range(n, n * (n + 1) // 2 + 1)),
    ))

    d3 = range(3, 9 if level == "full" else 6)
    checks.append(_all("n=3 injectivity gap equals d-3", ((d, hf_gap("n3_injectivity_gap", d) == d - 3) for d in d3)))
    checks.append(_all("two-variable identity for f_d", ((d, identity_check(d)) for d in range(3, 21))))
    checks.append(_all("l^3 f_d vanishes in A", ((d, witness_fd_verifies(d)) for d in d3)))

    def n3_fails(d):
        rep = check_slp(power_family(3, d), QQ)
        return (not rep.passed) and rep.witness is not None and (rep.witness.i, rep.witness.t) == (d - 2, 3)

    checks.append(_all("(x1,x2)^d + (x3^d) fails the SLP at l^3 from degree d-2", ((d, n3_fails(d)) for d in d3)))

    d4 = range(3, 7 if level == "full" else 5)
    checks.append(_all(
        "n=4 surjectivity gap equals d(d-1)/2 - d",
        ((d, hf_gap("n4_surjectivity_gap", d) == d * (d - 1) // 2 - d) for d in d4),
    ))

    def n4_perp(d):
        F = witness_n4(d)
        return in_inverse_system(power_family(4, d), F) and apply_derivation(ell(4), F).is_zero()

    checks.append(_all("n=4 inverse-system witness", ((d, n4_perp(d)) for d in d4)))
    checks.append(_all("n=5 kernel and inverse-system witnesses",
                       ((d, witness_n5(d).verifies()) for d in range(3, 6 if level == "full" else 5))))
    n_wlp = (4, 5, 6, 7) if level == "full" else (4, 5, 6)
    checks.append(_all("(x1,x2)^3 + (x3^3..xn^3) fails the WLP",
                       ((n, not check_wlp(power_family(n, 3), QQ).passed) for n in n_wlp)))

    checks.extend(verify_sec5_fixtures(level, progress=progress).checks)
    return FixtureReport(level, checks)

