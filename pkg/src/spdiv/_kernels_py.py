"""Pure-Python (NumPy) solver kernels.

Same contract as the compiled module ``spdiv._kernels``: Gaussian elimination
with partial pivoting, right-hand side fixed to the all-ones vector.  Batches
are eliminated column by column with the arithmetic vectorized across the
batch axis, so per-element operations happen in the same order as in the
compiled scalar loop.

Kernels never raise on singular input; they report the smallest pivot
magnitude and the achieved residual and leave the policy to the caller.
"""

import numpy as np

BACKEND_NAME = "python"


def _eliminate_batch(z):
    """Factor/solve a (B, m, m) batch against all-ones right-hand sides.

    Returns (w, min_pivot, residual_inf), each of length B.  Rows with a zero
    pivot yield NaN weights rather than an error.
    """
    b_count, m, _ = z.shape
    work = np.ascontiguousarray(z, dtype=np.float64).copy()
    rhs = np.ones((b_count, m), dtype=np.float64)
    min_pivot = np.full(b_count, np.inf)
    rows = np.arange(b_count)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for col in range(m):
            # Partial pivoting: first maximal |entry| at or below the diagonal.
            piv = col + np.argmax(np.abs(work[:, col:, col]), axis=1)
            swap = piv != col
            if swap.any():
                sw = rows[swap]
                work[sw, col], work[sw, piv[swap]] = (
                    work[sw, piv[swap]].copy(),
                    work[sw, col].copy(),
                )
                rhs[sw, col], rhs[sw, piv[swap]] = (
                    rhs[sw, piv[swap]].copy(),
                    rhs[sw, col].copy(),
                )
            pivot = work[:, col, col]
            np.minimum(min_pivot, np.abs(pivot), out=min_pivot)
            if col < m - 1:
                safe = np.where(pivot == 0.0, 1.0, pivot)
                factors = work[:, col + 1 :, col] / safe[:, None]
                work[:, col + 1 :, col + 1 :] -= (
                    factors[:, :, None] * work[:, None, col, col + 1 :]
                )
                rhs[:, col + 1 :] -= factors * rhs[:, None, col]

        w = np.empty_like(rhs)
        for i in range(m - 1, -1, -1):
            acc = rhs[:, i].copy()
            if i < m - 1:
                acc -= np.sum(work[:, i, i + 1 :] * w[:, i + 1 :], axis=1)
            pivot = work[:, i, i]
            safe = np.where(pivot == 0.0, np.nan, pivot)
            w[:, i] = acc / safe

        residual = np.max(np.abs(z @ w[:, :, None] - 1.0), axis=(1, 2))
    residual = np.where(np.isfinite(residual), residual, np.inf)
    return w, min_pivot, residual


def solve_unit(z):
    """Solve z w = 1 for one m-by-m matrix.

    Returns (w, residual_inf, min_pivot); z is not modified.
    """
    z = np.asarray(z, dtype=np.float64)
    w, min_pivot, residual = _eliminate_batch(z[None, :, :])
    return w[0], float(residual[0]), float(min_pivot[0])


def score_subsets(sim, subsets):
    """Diversity values for a batch of index subsets of a ground similarity matrix.

    sim is (n, n); subsets is (B, k) of integer indices.  Returns
    (values, min_pivots, residuals): values[b] is the component sum of the
    solution of sim[subset_b, subset_b] w = 1 (NaN where elimination hit a
    zero pivot).
    """
    sim = np.asarray(sim, dtype=np.float64)
    subsets = np.asarray(subsets, dtype=np.int64)
    if subsets.ndim != 2:
        raise ValueError("subsets must be a 2-d integer array")
    b_count, k = subsets.shape
    if k == 0:
        raise ValueError("subsets must have k >= 1 columns")
    gathered = sim[subsets[:, :, None], subsets[:, None, :]]
    w, min_pivot, residual = _eliminate_batch(gathered)
    values = w.sum(axis=1)
    return values, min_pivot, residual
