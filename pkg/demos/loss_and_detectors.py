"""Photon loss two ways (Kraus channel vs splitter dilation) and what an
inefficient detector does to the measurement elements."""

import numpy as np

from hyswap import (
    DensityOperator,
    ModeRegister,
    apply_loss,
    apply_loss_dilated,
    bosonic,
    loss_channel,
    make_cat,
    onoff_elements,
    spd_elements,
    with_inefficiency,
)

cutoff = 10
reg = ModeRegister((("M", bosonic(cutoff)),))

# an odd cat is fragile: one lost photon flips its parity
cat = make_cat(reg, "M", 0.8, "-")
rho = DensityOperator(reg, np.outer(cat.amplitudes, cat.amplitudes.conj()))

print("=== odd cat through a lossy channel ===")
print("T      trace    p(even)   p(odd)    Kraus-vs-dilation")
for T in (1.0, 0.9, 0.6, 0.3):
    out = apply_loss(rho, "M", loss_channel(T, cutoff))
    alt = apply_loss_dilated(rho, "M", T)
    diag = np.diag(out.matrix).real
    p_even = diag[0::2].sum()
    p_odd = diag[1::2].sum()
    gap = np.abs(out.matrix - alt.matrix).max()
    print(f"{T:.1f}    {out.trace():.4f}   {p_even:.4f}    {p_odd:.4f}    {gap:.1e}")

print("\nmean photon number scales exactly with T:")
n_op = np.arange(cutoff + 1)
n0 = float(np.diag(rho.matrix).real @ n_op)
for T in (0.75, 0.5, 0.25):
    out = apply_loss(rho, "M", loss_channel(T, cutoff))
    n1 = float(np.diag(out.matrix).real @ n_op)
    print(f"  T = {T}: <n> = {n1:.6f} = {T} * {n0:.6f}")

print("\n=== detector elements ===")
els = spd_elements(reg, "M")
print("ideal single-photon detector diagonal responses:")
for el in els:
    print(f"  outcome {el.label!r}: {np.round(np.diag(el.operator).real[:5], 3)}")

tp = 0.7
print(f"\nsame detector behind a T' = {tp} loss:")
for el in with_inefficiency(els, tp):
    print(f"  outcome {el.label!r}: {np.round(np.diag(el.operator).real[:5], 3)}")

off = with_inefficiency(onoff_elements(reg, "M")[0], tp)
print(
    "\nno-click probability on |n> is (1 - T')^n:",
    np.round(np.diag(off.operator).real[:5], 4),
)
