import math

import numpy as np
import pytest

from hyswap import (
    DensityOperator,
    ModeRegister,
    StateVector,
    bosonic,
    make_hybrid_pair,
    make_vsp_bell,
    negativity,
    partial_transpose,
    qubit,
    reduced_density,
)


def qq_register():
    return ModeRegister((("A", qubit()), ("C", qubit())))


def pure_rho(reg, vec):
    v = np.asarray(vec, dtype=np.complex128)
    return DensityOperator(reg, np.outer(v, v.conj()))


def test_schmidt_state_negativity():
    """E(cos t |00> + sin t |11>) = sin(2t), the two-qubit closed form."""
    reg = qq_register()
    for t in (0.0, 0.2, math.pi / 8, math.pi / 4, 1.1):
        v = np.zeros(4)
        v[0] = math.cos(t)
        v[3] = math.sin(t)
        got = negativity(pure_rho(reg, v), ["C"]).value
        assert abs(got - abs(math.sin(2 * t))) < 1e-12, t


def test_bell_state_negativity_is_one():
    reg = qq_register()
    for which in ("psi+", "psi-", "phi+", "phi-"):
        bell = make_vsp_bell(reg, "A", "C", which)
        got = negativity(pure_rho(reg, bell.amplitudes), ["C"]).value
        assert abs(got - 1.0) < 1e-14


def test_product_state_negativity_is_zero():
    reg = qq_register()
    v = np.kron([1 / math.sqrt(2), 1 / math.sqrt(2)], [0.6, 0.8])
    rep = negativity(pure_rho(reg, v), ["C"])
    assert rep.value == 0.0
    assert rep.negative_eigenvalues == ()


def test_werner_state_negativity():
    reg = qq_register()
    bell = make_vsp_bell(reg, "A", "C", "psi+")
    proj = np.outer(bell.amplitudes, bell.amplitudes.conj())
    for p in (0.0, 0.2, 1.0 / 3.0, 0.6, 1.0):
        w = p * proj + (1 - p) * np.eye(4) / 4.0
        got = negativity(DensityOperator(reg, w), ["C"]).value
        expect = max(0.0, (3.0 * p - 1.0) / 2.0)
        assert abs(got - expect) < 1e-12, p


def test_separable_mixtures_stay_ppt():
    rng = np.random.default_rng(13)
    reg = qq_register()
    for _ in range(25):
        rho = np.zeros((4, 4), dtype=np.complex128)
        weights = rng.dirichlet(np.ones(4))
        for w in weights:
            a = rng.normal(size=(2, 2)) @ np.array([1.0, 1.0j])
            c = rng.normal(size=(2, 2)) @ np.array([1.0, 1.0j])
            v = np.kron(a / np.linalg.norm(a), c / np.linalg.norm(c))
            rho += w * np.outer(v, v.conj())
        assert negativity(DensityOperator(reg, rho), ["C"]).value < 1e-12


def test_hybrid_pair_negativity_closed_form():
    # E = sqrt(1 - e^{-4 a^2}) for (|0>|a> + |1>|-a>)/sqrt(2)
    frozen = {0.3: 0.5498396802059387, 0.5: 0.79506009762065011}
    for alpha, expect in frozen.items():
        reg = ModeRegister((("A", qubit()), ("B", bosonic(14))))
        pair = make_hybrid_pair(reg, "A", "B", alpha)
        rho = reduced_density(pair, ["A", "B"])
        got = negativity(rho, ["B"]).value
        assert abs(got - expect) < 1e-12, alpha


def test_qubit_qutrit_negativity():
    reg = ModeRegister((("A", qubit()), ("B", bosonic(2))))
    v = np.zeros(6)
    v[0 * 3 + 0] = 1 / math.sqrt(2)
    v[1 * 3 + 2] = 1 / math.sqrt(2)
    got = negativity(pure_rho(reg, v), ["B"]).value
    assert abs(got - 1.0) < 1e-13


def test_partial_transpose_involution_and_trace():
    rng = np.random.default_rng(29)
    reg = ModeRegister((("A", qubit()), ("B", bosonic(2))))
    m = rng.normal(size=(6, 6, 2)) @ np.array([1.0, 1.0j])
    rho = DensityOperator(reg, m @ m.conj().T / np.trace(m @ m.conj().T).real)
    pt = partial_transpose(rho, ["B"])
    assert abs(pt.trace() - 1.0) < 1e-13
    assert pt.hermiticity_defect() < 1e-13
    back = partial_transpose(pt, ["B"])
    assert np.abs(back.matrix - rho.matrix).max() < 1e-14


def test_partial_transpose_over_either_half_gives_same_negativity():
    rng = np.random.default_rng(37)
    reg = qq_register()
    m = rng.normal(size=(4, 4, 2)) @ np.array([1.0, 1.0j])
    rho = DensityOperator(reg, m @ m.conj().T / np.trace(m @ m.conj().T).real)
    ea = negativity(rho, ["A"]).value
    ec = negativity(rho, ["C"]).value
    assert abs(ea - ec) < 1e-12


def test_partial_transpose_needs_proper_subset():
    reg = qq_register()
    rho = DensityOperator(reg, np.eye(4) / 4.0)
    with pytest.raises(ValueError, match="proper subset"):
        partial_transpose(rho, [])
    with pytest.raises(ValueError, match="proper subset"):
        partial_transpose(rho, ["A", "C"])
    with pytest.raises(ValueError, match="unknown mode"):
        partial_transpose(rho, ["Q"])


def test_negativity_renormalizes_and_reports_trace_factor():
    reg = qq_register()
    bell = make_vsp_bell(reg, "A", "C", "psi+")
    rho2 = DensityOperator(reg, 2.0 * np.outer(bell.amplitudes, bell.amplitudes.conj()))
    rep = negativity(rho2, ["C"])
    assert abs(rep.value - 1.0) < 1e-13  # value is for the normalized state
    assert abs(rep.trace_factor - 2.0) < 1e-14


def test_negativity_rejects_non_hermitian_input():
    reg = qq_register()
    m = np.eye(4, dtype=np.complex128) / 4.0
    m[0, 1] = 0.5  # no conjugate partner
    with pytest.raises(ValueError):
        negativity(DensityOperator(reg, m), ["C"])


def test_negativity_report_contents():
    reg = qq_register()
    bell = make_vsp_bell(reg, "A", "C", "phi+")
    rep = negativity(pure_rho(reg, bell.amplitudes), ["C"])
    assert all(ev < 0 for ev in rep.negative_eigenvalues)
    assert abs(rep.value + 2.0 * sum(rep.negative_eigenvalues)) < 1e-14
    assert rep.tolerance_used > 0


def test_negativity_eigen_tolerance_screens_noise():
    reg = qq_register()
    rho = DensityOperator(reg, np.eye(4) / 4.0)
    rep = negativity(rho, ["C"], eigen_tolerance=1e-6)
    assert rep.value == 0.0
