"""Numba kernels behind the batched similarity and matching paths.

All floating point arithmetic here mirrors the scalar Python code operation
for operation (no fastmath), so batched and scalar results are bit-identical.
"""

import numpy as np
from numba import config, njit, prange

# prefer OpenMP: some distro TBB builds are too old for numba and warn on use
config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]


@njit(cache=True, nogil=True)
def _pair_string_similarity(a, la, b, lb, lev_row, lcs_row):
    # lev_row / lcs_row are scratch buffers of length >= lb + 1
    for j in range(lb + 1):
        lev_row[j] = j
        lcs_row[j] = 0
    for i in range(1, la + 1):
        lev_diag = lev_row[0]
        lcs_diag = lcs_row[0]
        lev_row[0] = i
        ca = a[i - 1]
        for j in range(1, lb + 1):
            lev_up = lev_row[j]
            lcs_up = lcs_row[j]
            if ca == b[j - 1]:
                lev = lev_diag
                lcs = lcs_diag + 1
            else:
                lev = lev_diag + 1
                if lev_up + 1 < lev:
                    lev = lev_up + 1
                if lev_row[j - 1] + 1 < lev:
                    lev = lev_row[j - 1] + 1
                lcs = lcs_up if lcs_up >= lcs_row[j - 1] else lcs_row[j - 1]
            lev_row[j] = lev
            lcs_row[j] = lcs
            lev_diag = lev_up
            lcs_diag = lcs_up
    shortest = la if la < lb else lb
    return lcs_row[lb] / (shortest + lev_row[lb])


@njit(cache=True, parallel=True)
def string_similarity_matrix(a_codes, a_lens, b_codes, b_lens):
    n = a_lens.shape[0]
    m = b_lens.shape[0]
    out = np.empty((n, m), dtype=np.float64)
    width = b_codes.shape[1] + 1
    for r in prange(n):
        lev_row = np.empty(width, dtype=np.int64)
        lcs_row = np.empty(width, dtype=np.int64)
        a = a_codes[r]
        la = a_lens[r]
        for c in range(m):
            out[r, c] = _pair_string_similarity(a, la, b_codes[c], b_lens[c], lev_row, lcs_row)
    return out


@njit(cache=True, parallel=True)
def best_code_similarity(code_sim, a_primary, a_alternate, b_primary, b_alternate):
    """Max code-pair similarity per word pair; -1 marks an undefined pair.

    Index arrays point into the rows/columns of ``code_sim``; -1 means the
    word has no such code.
    """
    n = a_primary.shape[0]
    m = b_primary.shape[0]
    out = np.empty((n, m), dtype=np.float64)
    for r in prange(n):
        ap = a_primary[r]
        aa = a_alternate[r]
        for c in range(m):
            bp = b_primary[c]
            ba = b_alternate[c]
            best = -1.0
            if ap >= 0:
                if bp >= 0 and code_sim[ap, bp] > best:
                    best = code_sim[ap, bp]
                if ba >= 0 and code_sim[ap, ba] > best:
                    best = code_sim[ap, ba]
            if aa >= 0:
                if bp >= 0 and code_sim[aa, bp] > best:
                    best = code_sim[aa, bp]
                if ba >= 0 and code_sim[aa, ba] > best:
                    best = code_sim[aa, ba]
            out[r, c] = best
    return out


@njit(cache=True, nogil=True)
def clamped_cosine(va, na, vb, nb):
    dot = 0.0
    for d in range(va.shape[0]):
        dot += va[d] * vb[d]
    cos = dot / (na * nb)
    if cos > 1.0:
        return 1.0
    return cos if cos > 0.0 else 0.0


@njit(cache=True, parallel=True)
def cosine_matrix(vectors, norms, a_rows, b_rows):
    """Clamped cosine for every (a, b) pair; rows of -1 give NaN (absent)."""
    n = a_rows.shape[0]
    m = b_rows.shape[0]
    out = np.empty((n, m), dtype=np.float64)
    for r in prange(n):
        ia = a_rows[r]
        for c in range(m):
            ib = b_rows[c]
            if ia < 0 or ib < 0:
                out[r, c] = np.nan
            elif ia == ib:
                out[r, c] = 1.0
            else:
                out[r, c] = clamped_cosine(vectors[ia], norms[ia], vectors[ib], norms[ib])
    return out


@njit(cache=True, nogil=True)
def combine_scalar(c, c_ok, p, p_ok, s, w_c, w_p, w_s):
    # result is snapped to a 1e-12 grid; see similarity.SCORE_QUANTUM
    num = 0.0
    den = 0.0
    if c_ok:
        num += w_c * c
        den += w_c
    if p_ok:
        num += w_p * p
        den += w_p
    num += w_s * s
    den += w_s
    if den > 0.0:
        return np.rint(num / den * 1e12) / 1e12
    return 0.0


@njit(cache=True, parallel=True)
def top1_per_row(ctx, ctx_ok, pho, pho_ok, sss, iv_rank, w_c, w_p, w_s):
    """Best combined score and its column per row; ties go to lowest rank."""
    n, m = sss.shape
    best_score = np.empty(n, dtype=np.float64)
    best_col = np.empty(n, dtype=np.int64)
    for r in prange(n):
        bs = -1.0
        bc = -1
        for c in range(m):
            s = combine_scalar(ctx[r, c], ctx_ok[r, c], pho[r, c], pho_ok[r, c],
                               sss[r, c], w_c, w_p, w_s)
            if s > bs or (s == bs and iv_rank[c] < iv_rank[bc]):
                bs = s
                bc = c
        best_score[r] = bs
        best_col[r] = bc
    return best_score, best_col


@njit(cache=True, parallel=True)
def combine_matrix(ctx, ctx_ok, pho, pho_ok, sss, w_c, w_p, w_s):
    n, m = sss.shape
    out = np.empty((n, m), dtype=np.float64)
    for r in prange(n):
        for c in range(m):
            out[r, c] = combine_scalar(ctx[r, c], ctx_ok[r, c], pho[r, c], pho_ok[r, c],
                                       sss[r, c], w_c, w_p, w_s)
    return out
