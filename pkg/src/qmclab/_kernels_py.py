"""Pure-NumPy fallback for the hot kernels.

Same contracts as the compiled module ``qmclab._kernels_c``; selected by
``qmclab._backend`` when the extension is unavailable or disabled.
"""
import numpy as np

BACKEND = "python"

_SCALE = 2.0 ** -32


def sobol_fill(directions, state, index, out):
    """Fill `out` with Sobol' points at indices index+1 .. index+count.

    Parameters
    ----------
    directions : uint32 array (n, 32)
        Expanded direction integers, one row per dimension.
    state : uint32 array (n,)
        XOR state of the point at `index`; updated in place to the state of
        the last generated point.
    index : int
        Current 0-based sequence index (the point `state` encodes).
    out : float64 array (count, n)
        Filled with the generated coordinates in [0, 1).
    """
    count, n = out.shape
    idx = np.arange(index + 1, index + count + 1, dtype=np.uint64)
    gray = idx ^ (idx >> np.uint64(1))
    y = np.zeros((count, n), dtype=np.uint32)
    for b in range(32):
        bit = ((gray >> np.uint64(b)) & np.uint64(1)).astype(np.uint32)
        y ^= bit[:, None] * directions[:, b][None, :]
    np.multiply(y, _SCALE, out=out)
    state[:] = y[-1]


def l2_star_sq(points):
    """Squared Warnock L2 star discrepancy of an (N, n) point set.

    The O(N^2 n) pairwise term is evaluated in row blocks to bound the
    temporary broadcast array.
    """
    x = np.ascontiguousarray(points, dtype=np.float64)
    N, n = x.shape
    term2 = (2.0 ** (1 - n) / N) * np.prod(1.0 - x * x, axis=1).sum()
    term3 = 3.0 ** -n

    block = max(1, int(4e6) // max(N * n, 1))
    pair_sum = 0.0
    for i0 in range(0, N, block):
        xi = x[i0:i0 + block]
        m = np.maximum(xi[:, None, :], x[None, :, :])
        pair_sum += np.prod(1.0 - m, axis=2).sum()
    term1 = pair_sum / (N * N)
    return term1 - term2 + term3
