import math

import numpy as np
import pytest
import scipy.linalg
import scipy.special

from hyswap import (
    FIFTY_FIFTY,
    BeamSplitterParams,
    DensityOperator,
    ModeRegister,
    StateVector,
    apply_bs,
    apply_loss,
    apply_loss_dilated,
    bosonic,
    bs_unitary,
    fock_projector,
    gamma_tau_to_T,
    homodyne_grid,
    homodyne_vector,
    loss_channel,
    make_coherent,
    make_fock,
    mean_photon,
    measure_and_reduce,
    onoff_elements,
    pnr_elements,
    promote_qubit,
    qubit,
    quadrature_amplitudes,
    spd_elements,
    with_inefficiency,
)


def random_state(reg, rng):
    v = rng.normal(size=(reg.dim, 2)) @ np.array([1.0, 1.0j])
    return StateVector(reg, v / np.linalg.norm(v))


# ---------------------------------------------------------------------------
# beam splitter


def ladder(d):
    return np.diag(np.sqrt(np.arange(1, d)), k=1)  # annihilation, d x d


def test_bs_unitary_matches_matrix_exponential():
    """Oracle: exponentiate the generator directly with scipy.

    U = exp((theta/2) (e^{i phi} a†b - e^{-i phi} a b†)) on the product
    basis with the first mode most significant.
    """
    d = 6
    a = ladder(d)
    ad = a.conj().T
    for theta, phi in [(math.pi / 2, math.pi), (0.7, 0.0), (1.3, 2.1), (2.9, -0.4)]:
        gen = (theta / 2.0) * (
            np.exp(1j * phi) * np.kron(ad, a) - np.exp(-1j * phi) * np.kron(a, ad)
        )
        ref = scipy.linalg.expm(gen)
        got = bs_unitary(d, d, BeamSplitterParams(theta, phi))
        assert np.abs(got - ref).max() < 1e-12, (theta, phi)


def test_bs_unitary_is_unitary_on_truncated_space():
    rng = np.random.default_rng(3)
    for _ in range(10):
        d1, d2 = rng.integers(2, 7, size=2)
        theta, phi = rng.uniform(0, math.pi, size=2)
        U = bs_unitary(int(d1), int(d2), BeamSplitterParams(theta, phi))
        assert np.abs(U @ U.conj().T - np.eye(d1 * d2)).max() < 1e-13


def test_bs_transmission_mapping():
    p = BeamSplitterParams.from_transmission(0.36)
    assert abs(p.transmission - 0.36) < 1e-15
    assert abs(math.cos(p.theta / 2.0) ** 2 - 0.36) < 1e-15
    assert abs(FIFTY_FIFTY.transmission - 0.5) < 1e-15
    with pytest.raises(ValueError):
        BeamSplitterParams.from_transmission(1.2)


def test_apply_bs_single_photon_splitting():
    reg = ModeRegister((("X", bosonic(3)), ("Y", bosonic(3))))
    out = apply_bs(make_fock(reg, {"X": 1}), "X", "Y", FIFTY_FIFTY)
    v = out.tensor_view()
    s = 1.0 / math.sqrt(2.0)
    assert abs(v[1, 0] - s) < 1e-14
    assert abs(v[0, 1] - s) < 1e-14
    out = apply_bs(make_fock(reg, {"Y": 1}), "X", "Y", FIFTY_FIFTY)
    v = out.tensor_view()
    assert abs(v[0, 1] - s) < 1e-14
    assert abs(v[1, 0] + s) < 1e-14


def test_apply_bs_hong_ou_mandel():
    reg = ModeRegister((("X", bosonic(3)), ("Y", bosonic(3))))
    out = apply_bs(make_fock(reg, {"X": 1, "Y": 1}), "X", "Y", FIFTY_FIFTY)
    v = out.tensor_view()
    assert abs(v[1, 1]) < 1e-14  # coincidences cancel
    assert abs(abs(v[0, 2]) ** 2 - 0.5) < 1e-14
    assert abs(abs(v[2, 0]) ** 2 - 0.5) < 1e-14


def test_apply_bs_conserves_total_photon_number():
    rng = np.random.default_rng(5)
    reg = ModeRegister((("X", bosonic(5)), ("Y", bosonic(5))))
    n_tot = np.add.outer(np.arange(6), np.arange(6))
    for _ in range(10):
        psi = random_state(reg, rng)
        out = apply_bs(psi, "X", "Y", BeamSplitterParams(1.1, 0.6))
        p_in = np.zeros(11)
        p_out = np.zeros(11)
        np.add.at(p_in, n_tot.reshape(-1), np.abs(psi.amplitudes) ** 2)
        np.add.at(p_out, n_tot.reshape(-1), np.abs(out.amplitudes) ** 2)
        assert np.abs(p_in - p_out).max() < 1e-13


def test_apply_bs_coherent_in_coherent_out():
    reg = ModeRegister((("X", bosonic(14)), ("Y", bosonic(14))))
    a, b = 0.5, -0.2 + 0.3j
    from hyswap import fidelity, tensor

    inp = tensor(
        make_coherent(ModeRegister(reg.modes[:1]), "X", a),
        make_coherent(ModeRegister(reg.modes[1:]), "Y", b),
    )
    out = apply_bs(inp, "X", "Y", FIFTY_FIFTY)
    expect = tensor(
        make_coherent(ModeRegister(reg.modes[:1]), "X", (a - b) / math.sqrt(2)),
        make_coherent(ModeRegister(reg.modes[1:]), "Y", (a + b) / math.sqrt(2)),
    )
    assert 1.0 - fidelity(out, expect) < 1e-11


def test_apply_bs_rejects_qubit_modes():
    reg = ModeRegister((("A", qubit()), ("B", bosonic(2))))
    psi = make_fock(reg)
    with pytest.raises(ValueError, match="promote qubit modes explicitly"):
        apply_bs(psi, "A", "B", FIFTY_FIFTY)
    # after promotion it goes through
    apply_bs(promote_qubit(psi, "A"), "A", "B", FIFTY_FIFTY)


def test_apply_bs_density_path_matches_pure_path():
    rng = np.random.default_rng(9)
    reg = ModeRegister((("X", bosonic(4)), ("Y", bosonic(4))))
    params = BeamSplitterParams(0.9, 1.7)
    for _ in range(5):
        psi = random_state(reg, rng)
        rho = DensityOperator(reg, np.outer(psi.amplitudes, psi.amplitudes.conj()))
        out_rho = apply_bs(rho, "X", "Y", params)
        out_psi = apply_bs(psi, "X", "Y", params)
        ref = np.outer(out_psi.amplitudes, out_psi.amplitudes.conj())
        assert np.abs(out_rho.matrix - ref).max() < 1e-13


def test_bs_inverse_composition():
    reg = ModeRegister((("X", bosonic(5)), ("Y", bosonic(5))))
    rng = np.random.default_rng(21)
    psi = random_state(reg, rng)
    params = BeamSplitterParams(1.234, 0.456)
    back = apply_bs(
        apply_bs(psi, "X", "Y", params),
        "X", "Y", BeamSplitterParams(params.theta, params.phi + math.pi),
    )
    assert np.abs(back.amplitudes - psi.amplitudes).max() < 1e-13


def test_gamma_tau_to_T():
    assert gamma_tau_to_T(0.0) == 1.0
    assert abs(gamma_tau_to_T(0.5) - math.exp(-0.5)) < 1e-15
    with pytest.raises(ValueError):
        gamma_tau_to_T(-0.1)


# ---------------------------------------------------------------------------
# loss channel


def test_loss_kraus_binomial_elements():
    c = 5
    ch = loss_channel(0.7, c)
    for k, A in enumerate(ch.kraus):
        for n in range(c + 1):
            m = n - k
            if m < 0:
                expect = 0.0
            else:
                expect = math.sqrt(
                    math.comb(n, k) * (1 - 0.7) ** k * 0.7**m
                )
            got = A[m, n] if m >= 0 else 0.0
            assert abs(got - expect) < 1e-15, (k, n)


def test_loss_kraus_completeness():
    for T in (0.0, 0.3, 0.85, 1.0):
        ch = loss_channel(T, 6)
        total = sum(A.conj().T @ A for A in ch.kraus)
        assert np.abs(total - np.eye(7)).max() < 1e-14, T


def test_loss_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(17)
    reg = ModeRegister((("M", bosonic(6)),))
    for _ in range(10):
        psi = random_state(reg, rng)
        rho = DensityOperator(reg, np.outer(psi.amplitudes, psi.amplitudes.conj()))
        out = apply_loss(rho, "M", loss_channel(float(rng.uniform()), 6))
        assert abs(out.trace() - 1.0) < 1e-14
        assert out.hermiticity_defect() < 1e-14


def test_loss_scales_mean_photon_exactly():
    # sum_k (n-k) C(n,k) (1-T)^k T^{n-k} = n T holds on the truncated space
    reg = ModeRegister((("M", bosonic(8)),))
    rng = np.random.default_rng(2)
    n_op = np.arange(9)
    for T in (0.25, 0.6, 0.95):
        psi = random_state(reg, rng)
        rho = DensityOperator(reg, np.outer(psi.amplitudes, psi.amplitudes.conj()))
        before = float(np.real(np.diag(rho.matrix)) @ n_op)
        out = apply_loss(rho, "M", loss_channel(T, 8))
        after = float(np.real(np.diag(out.matrix)) @ n_op)
        assert abs(after - T * before) < 1e-13


def test_loss_on_coherent_state_shrinks_amplitude():
    alpha, T = 0.8, 0.6
    reg = ModeRegister((("M", bosonic(16)),))
    rho_in = make_coherent(reg, "M", alpha)
    rho = DensityOperator(reg, np.outer(rho_in.amplitudes, rho_in.amplitudes.conj()))
    out = apply_loss(rho, "M", loss_channel(T, 16))
    target = make_coherent(reg, "M", math.sqrt(T) * alpha).amplitudes
    fid = float(np.real(target.conj() @ out.matrix @ target))
    assert fid > 1.0 - 1e-10


def test_loss_endpoints():
    reg = ModeRegister((("M", bosonic(4)),))
    psi = make_fock(reg, {"M": 3})
    rho = DensityOperator(reg, np.outer(psi.amplitudes, psi.amplitudes.conj()))
    ident = apply_loss(rho, "M", loss_channel(1.0, 4))
    assert np.abs(ident.matrix - rho.matrix).max() < 1e-15
    dead = apply_loss(rho, "M", loss_channel(0.0, 4))
    vac = np.zeros((5, 5))
    vac[0, 0] = 1.0
    assert np.abs(dead.matrix - vac).max() < 1e-15


def test_loss_dilated_route_agrees():
    rng = np.random.default_rng(31)
    reg = ModeRegister((("A", qubit()), ("M", bosonic(5))))
    for _ in range(8):
        psi = random_state(reg, rng)
        rho = DensityOperator(reg, np.outer(psi.amplitudes, psi.amplitudes.conj()))
        T = float(rng.uniform())
        a = apply_loss(rho, "M", loss_channel(T, 5)).matrix
        b = apply_loss_dilated(rho, "M", T).matrix
        assert np.abs(a - b).max() < 1e-13


def test_loss_channel_validation():
    with pytest.raises(ValueError):
        loss_channel(1.5, 4)
    with pytest.raises(ValueError):
        apply_loss(
            DensityOperator(ModeRegister((("M", bosonic(3)),)), np.eye(4) / 4),
            "M",
            loss_channel(0.5, 5),  # wrong dimension for the mode
        )


# ---------------------------------------------------------------------------
# detectors


def test_detector_sets_are_complete():
    reg = ModeRegister((("M", bosonic(7)),))
    for els in (pnr_elements(reg, "M"), onoff_elements(reg, "M"), spd_elements(reg, "M")):
        total = sum(el.operator for el in els)
        assert np.abs(total - np.eye(8)).max() < 1e-15


def test_detector_labels():
    reg = ModeRegister((("M", bosonic(4)),))
    assert [el.label for el in spd_elements(reg, "M")] == ["0", "1", "2+"]
    assert [el.label for el in onoff_elements(reg, "M")] == ["off", "click"]
    assert [el.label for el in pnr_elements(reg, "M", 2)] == ["0", "1", "2"]


def test_spd_two_plus_element():
    reg = ModeRegister((("M", bosonic(4)),))
    rest = spd_elements(reg, "M")[2].operator
    assert np.abs(np.diag(rest).real - np.array([0, 0, 1, 1, 1])).max() < 1e-15


def test_fock_projector_bounds():
    reg = ModeRegister((("M", bosonic(3)),))
    with pytest.raises(ValueError, match="occupation out of range"):
        fock_projector(reg, "M", 4)


def test_with_inefficiency_passthrough_and_povm():
    reg = ModeRegister((("M", bosonic(6)),))
    els = spd_elements(reg, "M")
    same = with_inefficiency(els, 1.0)
    assert all(a is b for a, b in zip(same, els))  # T' = 1 is the identity map
    degraded = with_inefficiency(els, 0.55)
    total = sum(el.operator for el in degraded)
    assert np.abs(total - np.eye(7)).max() < 1e-14  # still a POVM
    assert all(el.kind == "povm-element" for el in degraded)
    # single-element calling convention
    one = with_inefficiency(els[0], 0.55)
    assert np.abs(one.operator - degraded[0].operator).max() < 1e-15


def test_with_inefficiency_off_element_closed_form():
    # no-click probability on |n> behind a T' loss is (1 - T')^n
    reg = ModeRegister((("M", bosonic(6)),))
    tp = 0.7
    off = with_inefficiency(onoff_elements(reg, "M")[0], tp)
    diag = np.diag(off.operator).real
    expect = (1.0 - tp) ** np.arange(7)
    assert np.abs(diag - expect).max() < 1e-14


def test_with_inefficiency_range_check():
    reg = ModeRegister((("M", bosonic(3)),))
    with pytest.raises(ValueError):
        with_inefficiency(onoff_elements(reg, "M"), 1.2)


# ---------------------------------------------------------------------------
# quadrature amplitudes and homodyne pieces


def test_quadrature_amplitudes_match_hermite_functions():
    xs = np.linspace(-4.0, 4.0, 17)
    dim = 15
    V = quadrature_amplitudes(xs, dim, 0.0)
    for n in range(dim):
        ref = (
            math.pi**-0.25
            / math.sqrt(2.0**n * math.factorial(n))
            * scipy.special.eval_hermite(n, xs)
            * np.exp(-0.5 * xs**2)
        )
        assert np.abs(V[n] - ref).max() < 1e-12, n


def test_quadrature_phase_convention():
    xs = np.array([0.7])
    dim = 6
    theta = 1.1
    V0 = quadrature_amplitudes(xs, dim, 0.0)
    Vt = quadrature_amplitudes(xs, dim, theta)
    phases = np.exp(-1j * theta * np.arange(dim))
    assert np.abs(Vt - V0 * phases[:, None]).max() < 1e-15


def test_quadrature_orthonormality_under_grid():
    # window wide enough that the psi_n tails beyond x_max are negligible
    xs, ws = homodyne_grid(9.0, 301)
    V = quadrature_amplitudes(xs, 8, math.pi / 2)
    gram = (V * ws) @ V.conj().T
    assert np.abs(gram - np.eye(8)).max() < 1e-12
    # on the default [-6, 6] window the deficit is exactly the tail mass
    xs, ws = homodyne_grid(6.0, 201)
    V = quadrature_amplitudes(xs, 8, math.pi / 2)
    gram = (V * ws) @ V.conj().T
    assert np.abs(gram - np.eye(8)).max() < 1e-7


def test_quadrature_mean_of_coherent_state():
    # <x_theta> = sqrt(2) Re(alpha e^{-i theta})
    xs, ws = homodyne_grid(7.0, 161)
    reg = ModeRegister((("M", bosonic(20)),))
    alpha = 0.6 + 0.3j
    for theta in (0.0, math.pi / 2):
        V = quadrature_amplitudes(xs, 21, theta)
        amp = make_coherent(reg, "M", alpha).amplitudes
        proj = V.T @ amp  # <x|psi> on the grid
        mean = float(np.real(np.sum(ws * xs * np.abs(proj) ** 2)))
        expect = math.sqrt(2.0) * (alpha * np.exp(-1j * theta)).real
        assert abs(mean - expect) < 1e-9, theta


def test_homodyne_grid_properties():
    xs, ws = homodyne_grid(6.0, 201)
    assert xs.size == ws.size == 201
    assert abs(ws.sum() - 12.0) < 1e-12
    assert np.abs(xs + xs[::-1]).max() < 1e-12  # symmetric nodes
    with pytest.raises(ValueError):
        homodyne_grid(-1.0, 5)
    with pytest.raises(ValueError):
        homodyne_grid(6.0, 0)


def test_homodyne_vector_element():
    reg = ModeRegister((("M", bosonic(5)),))
    el = homodyne_vector(reg, "M", 0.8)
    assert el.kind == "quadrature-vector"
    assert el.vector is not None
    assert np.abs(el.operator - np.outer(el.vector.conj(), el.vector)).max() < 1e-15


# ---------------------------------------------------------------------------
# measure_and_reduce


def test_measure_probabilities_sum_to_one():
    rng = np.random.default_rng(41)
    reg = ModeRegister((("A", qubit()), ("B", bosonic(3)), ("C", qubit())))
    psi = random_state(reg, rng)
    total = 0.0
    for el in pnr_elements(reg, "B"):
        p, rho = measure_and_reduce(psi, [el], ["A", "C"])
        total += p
        if p > 1e-12:
            assert abs(rho.trace() - 1.0) < 1e-12
    assert abs(total - 1.0) < 1e-13


def test_measure_matches_direct_slice():
    rng = np.random.default_rng(43)
    reg = ModeRegister((("A", qubit()), ("B", bosonic(3))))
    psi = random_state(reg, rng)
    n = 2
    p, rho = measure_and_reduce(psi, [fock_projector(reg, "B", n)], ["A"])
    block = psi.tensor_view()[:, n]
    assert abs(p - float(np.vdot(block, block).real)) < 1e-14
    ref = np.outer(block, block.conj()) / p
    assert np.abs(rho.matrix - ref).max() < 1e-13


def test_measure_povm_element_agrees_with_projector_decomposition():
    # a POVM element equal to a projector must behave like the projector
    rng = np.random.default_rng(47)
    reg = ModeRegister((("A", qubit()), ("B", bosonic(4))))
    psi = random_state(reg, rng)
    proj = fock_projector(reg, "B", 1)
    from hyswap import MeasurementElement

    povm = MeasurementElement("1", ("B",), proj.operator.copy(), "povm-element")
    p1, r1 = measure_and_reduce(psi, [proj], ["A"])
    p2, r2 = measure_and_reduce(psi, [povm], ["A"])
    assert abs(p1 - p2) < 1e-14
    assert np.abs(r1.matrix - r2.matrix).max() < 1e-12


def test_measure_dimension_mismatch():
    reg_a = ModeRegister((("B", bosonic(3)),))
    reg_b = ModeRegister((("B", bosonic(5)),))
    psi = make_fock(reg_b)
    with pytest.raises(ValueError, match="wrong dimension"):
        measure_and_reduce(psi, [fock_projector(reg_a, "B", 0)], ["B"])
