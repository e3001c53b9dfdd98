"""Pure numpy implementation of the stepping kernels.

Systems in a batch are advanced together; a system stops moving once it has
taken its own number of steps.
"""
import numpy as np


def rk4_batch(H, h, nsteps, c0):
    A = -1j * np.asarray(H, dtype=np.complex128)
    h = np.asarray(h, dtype=float)
    nsteps = np.asarray(nsteps, dtype=np.int64)
    x = np.array(c0, dtype=np.complex128, copy=True)
    if x.shape[0] == 0:
        return x
    hh = (0.5 * h)[:, None]
    h6 = (h / 6.0)[:, None]
    hf = h[:, None]

    def rhs(v):
        return np.einsum("kij,kj->ki", A, v)

    for i in range(int(nsteps.max(initial=0))):
        active = (i < nsteps)[:, None]
        k1 = rhs(x)
        k2 = rhs(x + hh * k1)
        k3 = rhs(x + hh * k2)
        k4 = rhs(x + hf * k3)
        x = np.where(active, x + h6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), x)
    return x
