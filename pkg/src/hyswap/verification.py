"""Acceptance checks: simulator outputs against independent references.

Each check returns a :class:`CriterionResult`; :func:`run_all` executes
the whole battery and the ``verify`` CLI command prints one line per
criterion.  Checks are parameterized so the tests can also drive them
with deliberately broken settings (wrong splitter phase, starved
cutoff) and watch them fail.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .closed_form import closed_form, dv_loss_limit
from .fock import (
    DensityOperator,
    ModeRegister,
    bosonic,
    fidelity,
    make_coherent,
    make_fock,
    make_hybrid_pair,
    make_vsp_bell,
    qubit,
    reduced_density,
    tensor,
)
from .negativity import negativity, partial_transpose
from .optics import (
    BeamSplitterParams,
    apply_bs,
    apply_loss,
    apply_loss_dilated,
    bs_unitary,
    loss_channel,
    onoff_elements,
    pnr_elements,
    spd_elements,
)
from .protocols import dv_swap, he_swap_homodyne, he_swap_spd, cv_bsm_failure_prob

__all__ = ["CriterionResult", "run_all", "report", "CHECKS"]


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    measured: str
    tolerance: str


def _result(name, passed, measured, tolerance):
    return CriterionResult(name, bool(passed), measured, tolerance)


def check_dv_lossless(cutoff: int = 12) -> CriterionResult:
    t0 = time.perf_counter()
    res = dv_swap(1.0, 1.0, cutoff)
    elapsed = time.perf_counter() - t0
    err_p = abs(res.total_success_probability - 0.5)
    err_e = max(abs(o.negativity - 1.0) for o in res.per_outcome)
    ok = err_p <= 1e-10 and err_e <= 1e-10 and elapsed < 1.0
    return _result(
        "dv swap, lossless",
        ok,
        f"|p-1/2|={err_p:.2e} max|E-1|={err_e:.2e} in {elapsed:.2f}s",
        "1e-10, under 1s",
    )


def check_dv_loss_limit(cutoff: int = 12) -> CriterionResult:
    res = dv_swap(1e-6, 1.0, cutoff)
    err = abs(res.averaged_negativity - dv_loss_limit())
    ok = err <= 1e-5
    return _result(
        "dv negativity at vanishing transmission",
        ok,
        f"|E-(sqrt2-1)/2|={err:.2e}",
        "1e-5",
    )


def check_closed_form_grid(cutoff: int = 12) -> CriterionResult:
    t0 = time.perf_counter()
    worst_p = worst_e = 0.0
    for alpha in (0.3, 0.5, 0.7):
        for loss in np.arange(0.0, 0.91, 0.1):
            T = 1.0 - float(loss)
            for tp in (0.7, 1.0):
                ref = closed_form("dv", alpha, T, tp)
                sim = dv_swap(T, tp, cutoff)
                worst_p = max(worst_p, abs(sim.total_success_probability - ref.p))
                worst_e = max(worst_e, abs(sim.averaged_negativity - ref.E))
                ref = closed_form("he_spd", alpha, T, tp)
                sim = he_swap_spd(alpha, T, tp, cutoff)
                worst_p = max(worst_p, abs(sim.total_success_probability - ref.p))
                worst_e = max(worst_e, abs(sim.averaged_negativity - ref.E))
    elapsed = time.perf_counter() - t0
    ok = worst_p <= 1e-6 and worst_e <= 1e-6 and elapsed < 60.0
    return _result(
        "closed-form grid, dv and he_spd",
        ok,
        f"max|dp|={worst_p:.2e} max|dE|={worst_e:.2e} in {elapsed:.1f}s",
        "1e-6, under 60s",
    )


def check_headline_point(cutoff: int = 12) -> CriterionResult:
    he = he_swap_spd(0.3, 0.5, 0.7, cutoff).averaged_negativity
    dv = dv_swap(0.5, 0.7, cutoff).averaged_negativity
    err_he = abs(he - 0.791)
    err_dv = abs(dv - 0.329)
    ok = err_he <= 1e-3 and err_dv <= 1e-3
    return _result(
        "headline point alpha=0.3 T=0.5 T'=0.7",
        ok,
        f"E_he={he:.4f} (|d|={err_he:.1e}) E_dv={dv:.4f} (|d|={err_dv:.1e})",
        "1e-3 to 0.791 / 0.329",
    )


def check_negativity_ordering(cutoff: int = 12) -> CriterionResult:
    margin_bad = None
    for loss in np.arange(0.05, 0.901, 0.05):
        T = 1.0 - float(loss)
        he = he_swap_spd(0.3, T, 1.0, cutoff).averaged_negativity
        dv = dv_swap(T, 1.0, cutoff).averaged_negativity
        if he <= dv:
            margin_bad = (loss, he - dv)
            break
    worst_gap = 0.0
    for loss in np.arange(0.0, 0.201, 0.05):
        T = 1.0 - float(loss)
        he = he_swap_spd(0.7, T, 1.0, cutoff).averaged_negativity
        dv = dv_swap(T, 1.0, cutoff).averaged_negativity
        worst_gap = max(worst_gap, abs(he - dv))
    ok = margin_bad is None and worst_gap <= 0.02
    detail = f"alpha=0.7 max|E_he-E_dv|={worst_gap:.3f} on loss<=0.2"
    if margin_bad is not None:
        detail += f"; ordering broken at loss={margin_bad[0]:.2f}"
    return _result(
        "hybrid-vs-dv negativity ordering",
        ok,
        detail,
        "E_he > E_dv at alpha=0.3; gap <= 0.02 at alpha=0.7",
    )


def check_homodyne_scheme(cutoff: int = 12) -> CriterionResult:
    t0 = time.perf_counter()
    worst_p = worst_e = 0.0
    for alpha in (0.3, 0.5):
        for T in (0.5, 1.0):
            sim = he_swap_homodyne(alpha, T, 1.0, cutoff)
            ref = closed_form("he_ho", alpha, T, 1.0)
            worst_p = max(worst_p, abs(sim.total_success_probability - ref.p))
            worst_e = max(worst_e, abs(sim.averaged_negativity - ref.E))
    elapsed = time.perf_counter() - t0
    ok = worst_p <= 1e-4 and worst_e <= 2e-3 and elapsed < 120.0
    return _result(
        "homodyne scheme vs closed forms",
        ok,
        f"max|dp|={worst_p:.2e} max|dE|={worst_e:.2e} in {elapsed:.1f}s",
        "p 1e-4, E 2e-3, under 120s",
    )


def check_bs_fixtures(cutoff: int = 12, phi: float = math.pi) -> CriterionResult:
    """Splitter fixtures; ``phi`` can be overridden to watch them break."""
    params = BeamSplitterParams(math.pi / 2.0, phi)
    reg = ModeRegister((("X", bosonic(cutoff)), ("Y", bosonic(cutoff))))
    s = math.sqrt(0.5)
    worst_fock = 0.0
    fock_cases = [
        ({"X": 1}, [({"X": 1}, s), ({"Y": 1}, s)]),
        ({"Y": 1}, [({"Y": 1}, s), ({"X": 1}, -s)]),
        ({"X": 1, "Y": 1}, [({"Y": 2}, s), ({"X": 2}, -s)]),
    ]
    for occ_in, terms in fock_cases:
        out = apply_bs(make_fock(reg, occ_in), "X", "Y", params)
        expect = np.zeros(reg.dim, dtype=np.complex128)
        for occ, coeff in terms:
            expect += coeff * make_fock(reg, occ).amplitudes
        worst_fock = max(worst_fock, float(np.abs(out.amplitudes - expect).max()))
    worst_coh = 0.0
    pairs = [
        (0.4 + 0.3j, 0.2 - 0.1j),
        (0.5, 0.3),
        (0.3, 0.3), (0.3, -0.3), (-0.3, 0.3), (-0.3, -0.3),
        (0.7, 0.7), (0.7, -0.7),
    ]
    for a, b in pairs:
        out = apply_bs(
            tensor(
                make_coherent(ModeRegister(reg.modes[:1]), "X", a),
                make_coherent(ModeRegister(reg.modes[1:]), "Y", b),
            ),
            "X", "Y", params,
        )
        expect = tensor(
            make_coherent(ModeRegister(reg.modes[:1]), "X", (a - b) / math.sqrt(2.0)),
            make_coherent(ModeRegister(reg.modes[1:]), "Y", (a + b) / math.sqrt(2.0)),
        )
        worst_coh = max(worst_coh, 1.0 - fidelity(out, expect))
    ok = worst_fock <= 1e-12 and worst_coh <= 1e-10
    return _result(
        "beam-splitter fixtures",
        ok,
        f"Fock max|d|={worst_fock:.2e} coherent max(1-F)={worst_coh:.2e}",
        "1e-12 / 1e-10",
    )


def check_loss_routes_agree(cutoff: int = 8, n_states: int = 100, seed: int = 7) -> CriterionResult:
    rng = np.random.default_rng(seed)
    reg = ModeRegister((("M", bosonic(cutoff)),))
    d = cutoff + 1
    worst = 0.0
    for _ in range(n_states):
        v = rng.normal(size=(d, 2)) @ np.array([1.0, 1.0j])
        v /= np.linalg.norm(v)
        rho = DensityOperator(reg, np.outer(v, v.conj()))
        T = float(rng.uniform(0.0, 1.0))
        a = apply_loss(rho, "M", loss_channel(T, cutoff)).matrix
        b = apply_loss_dilated(rho, "M", T).matrix
        dist = 0.5 * float(np.abs(np.linalg.eigvalsh(a - b)).sum())
        worst = max(worst, dist)
    ok = worst <= 1e-10
    return _result(
        "loss channel: Kraus vs dilation",
        ok,
        f"max trace distance {worst:.2e} over {n_states} states",
        "1e-10",
    )


def check_cv_bsm(cutoff: int = 20) -> CriterionResult:
    got = cv_bsm_failure_prob(1.0, cutoff)
    ref = 1.0 / (2.0 * math.cosh(2.0))
    err = abs(got - ref)
    ok = err <= 1e-4
    return _result(
        "all-coherent Bell measurement failure at alpha=1",
        ok,
        f"p_fail={got:.6f} ref={ref:.6f} |d|={err:.2e}",
        "1e-4",
    )


def _property_negativity() -> float:
    reg = ModeRegister((("A", qubit()), ("C", qubit())))
    worst = 0.0
    bell = make_vsp_bell(reg, "A", "C", "psi+")
    rho = DensityOperator(reg, np.outer(bell.amplitudes, bell.amplitudes.conj()))
    worst = max(worst, abs(negativity(rho, ["C"]).value - 1.0))
    prod = make_fock(reg, {"A": 0, "C": 1})
    rho = DensityOperator(reg, np.outer(prod.amplitudes, prod.amplitudes.conj()))
    worst = max(worst, abs(negativity(rho, ["C"]).value))
    for p in (0.2, 0.5, 1.0):
        w = p * np.outer(bell.amplitudes, bell.amplitudes.conj()) + (1 - p) * np.eye(4) / 4.0
        got = negativity(DensityOperator(reg, w), ["C"]).value
        worst = max(worst, abs(got - max(0.0, (3.0 * p - 1.0) / 2.0)))
    pt2 = partial_transpose(partial_transpose(rho, ["C"]), ["C"])
    worst = max(worst, float(np.abs(pt2.matrix - rho.matrix).max()))
    return worst


def _property_detectors(cutoff: int = 10) -> float:
    reg = ModeRegister((("M", bosonic(cutoff)),))
    worst = 0.0
    for els in (pnr_elements(reg, "M"), onoff_elements(reg, "M"), spd_elements(reg, "M")):
        total = sum(el.operator for el in els)
        worst = max(worst, float(np.abs(total - np.eye(cutoff + 1)).max()))
    return worst


def _property_bs_unitarity(cutoff: int = 6) -> float:
    worst = 0.0
    d = cutoff + 1
    for theta in (0.3, math.pi / 2, 2.0):
        for phi in (0.0, math.pi / 3, math.pi):
            U = bs_unitary(d, d, BeamSplitterParams(theta, phi))
            worst = max(worst, float(np.abs(U @ U.conj().T - np.eye(d * d)).max()))
            Uinv = bs_unitary(d, d, BeamSplitterParams(theta, phi + math.pi))
            worst = max(worst, float(np.abs(Uinv @ U - np.eye(d * d)).max()))
    return worst


def _property_substitution(cutoff: int = 10) -> float:
    worst = 0.0
    for run in (
        lambda T, tp: dv_swap(T, tp, cutoff),
        lambda T, tp: he_swap_spd(0.5, T, tp, cutoff),
        lambda T, tp: he_swap_homodyne(0.5, T, tp, cutoff),
    ):
        a = run(0.8, 0.7)
        b = run(0.8 * 0.7, 1.0)
        worst = max(worst, abs(a.total_success_probability - b.total_success_probability))
        worst = max(worst, abs(a.averaged_negativity - b.averaged_negativity))
    return worst


def check_property_suite() -> CriterionResult:
    parts = {
        "negativity": (_property_negativity(), 1e-10),
        "detector completeness": (_property_detectors(), 1e-10),
        "bs unitarity": (_property_bs_unitarity(), 1e-12),
        "inefficiency substitution": (_property_substitution(), 1e-9),
    }
    ok = all(v <= tol for v, tol in parts.values())
    detail = " ".join(f"{k}={v:.1e}" for k, (v, _) in parts.items())
    return _result("property suite", ok, detail, "per-part 1e-10/1e-12/1e-9")


def check_cutoff_convergence(alpha: float = 0.7, cutoff: int = 10, step: int = 4, T: float = 0.7) -> CriterionResult:
    """Scalar outputs must be cutoff-stable at |alpha| <= 0.7.

    Compares a protocol point and a constructor-level negativity at
    ``cutoff`` and ``cutoff + step``.  Driving this with a starved
    cutoff (for example 4 at alpha = 0.7) makes it flag the truncation.
    """
    worst = 0.0
    lo = he_swap_spd(alpha, T, 1.0, cutoff)
    hi = he_swap_spd(alpha, T, 1.0, cutoff + step)
    worst = max(worst, abs(lo.total_success_probability - hi.total_success_probability))
    worst = max(worst, abs(lo.averaged_negativity - hi.averaged_negativity))
    pair_lo = _pair_negativity(alpha, cutoff)
    pair_hi = _pair_negativity(alpha, cutoff + step)
    worst = max(worst, abs(pair_lo - pair_hi))
    ok = worst <= 1e-8
    return _result(
        "cutoff convergence",
        ok,
        f"max shift {worst:.2e} between cutoffs {cutoff} and {cutoff + step}",
        "1e-8",
    )


def _pair_negativity(alpha: float, cutoff: int) -> float:
    reg = ModeRegister((("A", qubit()), ("B", bosonic(cutoff))))
    pair = make_hybrid_pair(reg, "A", "B", alpha)
    return negativity(reduced_density(pair, ["A", "B"]), ["B"]).value


CHECKS = (
    check_dv_lossless,
    check_dv_loss_limit,
    check_closed_form_grid,
    check_headline_point,
    check_negativity_ordering,
    check_homodyne_scheme,
    check_bs_fixtures,
    check_loss_routes_agree,
    check_cv_bsm,
    check_property_suite,
    check_cutoff_convergence,
)


def run_all() -> list[CriterionResult]:
    return [check() for check in CHECKS]


def report(results: list[CriterionResult], stream) -> bool:
    """Print one pass/fail line per criterion; True when everything passed."""
    all_ok = True
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        stream.write(f"[{tag}] {r.name}: {r.measured} (tolerance {r.tolerance})\n")
        all_ok = all_ok and r.passed
    stream.write(
        f"{sum(r.passed for r in results)}/{len(results)} criteria passed\n"
    )
    return all_ok
