"""Published lower-component expression, kept only for comparison.

Transcribed as printed so its disagreement with the first-order relation
can be measured. Nothing in the package uses it.
"""

import numpy as np

from ptdirac.specfun import JacobiParams, jacobi_eval


def printed_lower(r, sp, c):
    kappa = float(sp.q.kappa)
    eps, n_r = sp.eps, sp.q.n_r
    alpha = sp.params.alpha
    denom = sp.energy + (sp.params.mu - sp.params.c1)
    t = np.tanh(alpha * np.asarray(r, dtype=float))
    s = t * t
    a1 = (c * alpha * s ** (kappa / 2) * (1 - s) ** (eps / 2) * ((kappa + 1) / 2 * (1 - s) - eps / 2 * s)
          + c * alpha * kappa / np.arctanh(np.sqrt(s))) / denom
    out = a1 * jacobi_eval(JacobiParams(n_r, (2 * kappa - 1) / 2, eps), 1 - 2 * s)
    if n_r >= 1:
        d = (2 * eps + 2 * n_r + 2 * kappa + 1) / 4 * c
        a2 = d * alpha * s ** ((kappa + 2) / 2) * (1 - s) ** ((eps + 2) / 2) / denom
        out = out + a2 * jacobi_eval(JacobiParams(n_r - 1, (2 * kappa + 1) / 2, eps / 2 + 1), 1 - 2 * s)
    return out
