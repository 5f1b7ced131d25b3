"""Beam-splitter conventions, spelled out on small examples.

The splitter with theta = pi/2, phi = pi (the FIFTY_FIFTY constant)
realizes

    |1,0> -> (|1,0> + |0,1>)/sqrt(2)
    |0,1> -> (|0,1> - |1,0>)/sqrt(2)
    |1,1> -> (|0,2> - |2,0>)/sqrt(2)        (no coincidences)
    |a>|b> -> |(a-b)/sqrt(2)> |(a+b)/sqrt(2)>

and a transmission-T splitter against vacuum is the loss channel.
"""

import math

import numpy as np

from hyswap import (
    FIFTY_FIFTY,
    BeamSplitterParams,
    ModeRegister,
    apply_bs,
    bosonic,
    fidelity,
    make_coherent,
    make_fock,
    mean_photon,
    tensor,
)

reg = ModeRegister((("X", bosonic(4)), ("Y", bosonic(4))))


def show(label, state):
    t = state.tensor_view()
    terms = []
    for i in range(5):
        for j in range(5):
            if abs(t[i, j]) > 1e-10:
                terms.append(f"{t[i, j].real:+.4f}|{i},{j}>")
    print(f"  {label} -> " + " ".join(terms))


print("=== Fock-state fixtures at 50:50 ===")
show("|1,0>", apply_bs(make_fock(reg, {"X": 1}), "X", "Y", FIFTY_FIFTY))
show("|0,1>", apply_bs(make_fock(reg, {"Y": 1}), "X", "Y", FIFTY_FIFTY))
show("|1,1>", apply_bs(make_fock(reg, {"X": 1, "Y": 1}), "X", "Y", FIFTY_FIFTY))

print("\n=== coherent in, coherent out ===")
big = ModeRegister((("X", bosonic(12)), ("Y", bosonic(12))))
a, b = 0.6, 0.2
inp = tensor(
    make_coherent(ModeRegister(big.modes[:1]), "X", a),
    make_coherent(ModeRegister(big.modes[1:]), "Y", b),
)
out = apply_bs(inp, "X", "Y", FIFTY_FIFTY)
expect = tensor(
    make_coherent(ModeRegister(big.modes[:1]), "X", (a - b) / math.sqrt(2)),
    make_coherent(ModeRegister(big.modes[1:]), "Y", (a + b) / math.sqrt(2)),
)
print(f"|{a}>|{b}> against the analytic image: 1 - F = {1 - fidelity(out, expect):.2e}")

print("\n=== variable transmission: a photon leaks into the other port ===")
for T in (1.0, 0.8, 0.5, 0.2, 0.0):
    params = BeamSplitterParams.from_transmission(T)
    out = apply_bs(make_fock(reg, {"X": 1}), "X", "Y", params)
    print(
        f"  T = {T:.1f}: <n_X> = {mean_photon(out, 'X'):.3f}  "
        f"<n_Y> = {mean_photon(out, 'Y'):.3f}"
    )

print("\n=== the inverse splitter is (theta, phi + pi) ===")
rng = np.random.default_rng(1)
v = rng.normal(size=(reg.dim, 2)) @ np.array([1.0, 1.0j])
from hyswap import StateVector

psi = StateVector(reg, v / np.linalg.norm(v))
params = BeamSplitterParams(1.1, 0.4)
back = apply_bs(
    apply_bs(psi, "X", "Y", params),
    "X",
    "Y",
    BeamSplitterParams(params.theta, params.phi + math.pi),
)
print(f"round trip on a random state: max|d| = {np.abs(back.amplitudes - psi.amplitudes).max():.2e}")
