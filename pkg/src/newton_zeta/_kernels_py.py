"""Pure numpy implementations of the hot loops (fallback when the extension is absent)."""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def _mixed_radix(start: int, stop: int, radices: np.ndarray) -> np.ndarray:
    """Rows are the digit vectors of start..stop-1 (first digit varies slowest)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, len(radices)), dtype=np.int64)
    for j in range(len(radices) - 1, -1, -1):
        out[:, j] = idx % radices[j]
        idx //= radices[j]
    return out


def box_residues(c, d, D, vmask, open_mode):
    """Histogram over y in prod range(d_j) of (-sum_{i in vmask} lam_i*D) mod D.

    lam_i*D = sum_j c[i, j] * y_j mod D. In open mode points with some
    lam_i = 0 are skipped.
    """
    c = np.asarray(c, dtype=np.int64)
    d = np.asarray(d, dtype=np.int64)
    vmask = np.asarray(vmask, dtype=bool)
    k = len(d)
    hist = np.zeros(D, dtype=np.int64)
    total = int(np.prod(d)) if k else 1
    if k == 0:
        hist[0] = 1
        return hist
    for start in range(0, total, _CHUNK):
        y = _mixed_radix(start, min(total, start + _CHUNK), d)
        lam = np.zeros((len(y), k), dtype=np.int64)
        for i in range(k):
            acc = np.zeros(len(y), dtype=np.int64)
            for j in range(k):
                if c[i, j]:
                    acc = (acc + (c[i, j] * y[:, j]) % D) % D
            lam[:, i] = acc
        keep = np.ones(len(y), dtype=bool)
        if open_mode:
            keep = np.all(lam != 0, axis=1)
        psi = lam[:, vmask].sum(axis=1) % D if vmask.any() else np.zeros(len(y), dtype=np.int64)
        res = (-psi) % D
        hist += np.bincount(res[keep], minlength=D)
    return hist


def torus_scan(exps, coef_logs, q, p, exp_tab, add_tab):
    """Scan the torus (F_q^*)^d.

    exps: (m, d) exponent matrix shared by every row polynomial.
    coef_logs: (r, m) discrete logs of the coefficients, -1 for a zero coefficient.
    Returns (#{row0 == 0}, #{row0 == 1}, #{all rows == 0}).
    Field elements are coded so that 0 and 1 are codes 0 and 1; with no
    addition table the field is prime and codes are residues mod p.
    """
    exps = np.asarray(exps, dtype=np.int64)
    coef_logs = np.asarray(coef_logs, dtype=np.int64)
    exp_tab = np.asarray(exp_tab, dtype=np.int64)
    m, dd = exps.shape
    r = coef_logs.shape[0]
    qm1 = q - 1
    total = qm1 ** dd
    z0 = o0 = allz = 0
    radices = np.full(dd, qm1, dtype=np.int64)
    ex = exps % qm1
    for start in range(0, total, _CHUNK):
        logs = _mixed_radix(start, min(total, start + _CHUNK), radices)
        mono = (logs @ ex.T) % qm1  # (chunk, m)
        all_zero = np.ones(len(logs), dtype=bool)
        for row in range(r):
            acc = np.zeros(len(logs), dtype=np.int64)
            for t in range(m):
                cl = coef_logs[row, t]
                if cl < 0:
                    continue
                val = exp_tab[(mono[:, t] + cl) % qm1]
                if add_tab is None:
                    acc = (acc + val) % p
                else:
                    acc = add_tab[acc, val]
            if row == 0:
                z0 += int(np.count_nonzero(acc == 0))
                o0 += int(np.count_nonzero(acc == 1))
            all_zero &= acc == 0
        allz += int(np.count_nonzero(all_zero))
    return z0, o0, allz
