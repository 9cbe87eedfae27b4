"""Soft-margin linear SVM with asymmetric misclassification costs.

Training minimizes

    (1/2)||w||^2 + C+ * sum(slack over positives) + C- * sum(slack over negatives)

subject to ``y_k (w . x_k + b) >= 1 - slack_k``, where the cost ratio
``pa = C+ / C-`` amplifies the minority positive class.  The problem is
solved in the dual by coordinate ascent over the box ``0 <= alpha_i <=
C_{y_i}``.  The bias is handled by augmenting every example with a
constant feature of value 1, which removes the dual equality constraint;
the reported ``bias`` is the weight learned for that feature.

All inner products are confined to the two numba kernels below
(:func:`_cd_pass`, :func:`_decision_kernel`); swapping those out is the
extension seam for nonlinear kernels, of which none ship.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .dataset import Dataset, SparseVector

__all__ = [
    "TrainConfig",
    "TrainDiagnostics",
    "SvmModel",
    "train",
    "decision_values",
    "format_model_dump",
]


@dataclass(frozen=True)
class TrainConfig:
    """Solver settings: ``c_negative`` is C-, and C+ = ``pa * c_negative``."""

    c_negative: float = 1.0
    pa: float = 1.0
    tolerance: float = 1e-4
    max_passes: int = 1000

    def __post_init__(self) -> None:
        if not self.c_negative > 0:
            raise ValueError(f"c_negative must be > 0, got {self.c_negative}")
        if not self.pa > 0:
            raise ValueError(f"pa must be > 0, got {self.pa}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_passes < 1:
            raise ValueError(f"max_passes must be >= 1, got {self.max_passes}")

    @property
    def c_positive(self) -> float:
        return self.pa * self.c_negative


@dataclass(frozen=True)
class TrainDiagnostics:
    dual_objective: float
    slack_sum_pos: float
    slack_sum_neg: float
    passes: int
    max_kkt_violation: float
    converged: bool


@dataclass(frozen=True, eq=False)
class SvmModel:
    """A trained hyperplane.

    ``weights`` is dense and indexed directly by feature id (slot 0 is
    unused); ``alphas`` holds the dual variables in ``training_ids``
    order.  Models are immutable and safe to share across threads.
    """

    weights: np.ndarray
    bias: float
    alphas: np.ndarray
    training_ids: tuple[int, ...]
    diagnostics: TrainDiagnostics

    def decision_value(self, x: SparseVector) -> float:
        """The functional margin ``w . x + b``."""
        return x.dot(self.weights) + self.bias

    def predict(self, x: SparseVector) -> int:
        """+1 iff the decision value is strictly positive, else -1."""
        return 1 if self.decision_value(x) > 0.0 else -1


@njit(cache=True, nogil=True)
def _gather_csr(indptr, cols, vals, rows):
    m = rows.size
    out_indptr = np.zeros(m + 1, dtype=np.int64)
    for t in range(m):
        i = rows[t]
        out_indptr[t + 1] = out_indptr[t] + (indptr[i + 1] - indptr[i])
    nnz = out_indptr[m]
    out_cols = np.empty(nnz, dtype=np.int64)
    out_vals = np.empty(nnz, dtype=np.float64)
    for t in range(m):
        i = rows[t]
        k0 = indptr[i]
        o = out_indptr[t]
        for k in range(indptr[i + 1] - k0):
            out_cols[o + k] = cols[k0 + k]
            out_vals[o + k] = vals[k0 + k]
    return out_indptr, out_cols, out_vals


@njit(cache=True, nogil=True)
def _cd_pass(indptr, cols, vals, y, caps, qii, alpha, w, order, aug_col, keep, upper_bar, lower_bar):
    """One dual coordinate-ascent sweep over ``order``.

    Coordinates stuck at a bound whose gradient is past the previous
    sweep's extreme (``upper_bar``/``lower_bar``) are shrunk: marked
    False in ``keep`` and skipped until the caller unshrinks.  Returns
    (max KKT violation, max projected gradient, min projected gradient)
    over the sweep.
    """
    max_viol = 0.0
    pg_max = -np.inf
    pg_min = np.inf
    for t in range(order.size):
        i = order[t]
        a = alpha[i]
        cap = caps[i]
        s = w[aug_col]
        for k in range(indptr[i], indptr[i + 1]):
            s += vals[k] * w[cols[k]]
        grad = y[i] * s - 1.0
        if a <= 0.0:
            if grad > upper_bar:
                keep[i] = False
                continue
            pg = grad if grad < 0.0 else 0.0
        elif a >= cap:
            if grad < lower_bar:
                keep[i] = False
                continue
            pg = grad if grad > 0.0 else 0.0
        else:
            pg = grad
        if pg > pg_max:
            pg_max = pg
        if pg < pg_min:
            pg_min = pg
        if pg != 0.0:
            v = -pg if pg < 0.0 else pg
            if v > max_viol:
                max_viol = v
            na = a - grad / qii[i]
            if na < 0.0:
                na = 0.0
            elif na > cap:
                na = cap
            if na != a:
                alpha[i] = na
                d = (na - a) * y[i]
                for k in range(indptr[i], indptr[i + 1]):
                    w[cols[k]] += d * vals[k]
                w[aug_col] += d
    return max_viol, pg_max, pg_min


@njit(cache=True, nogil=True)
def _decision_kernel(indptr, cols, vals, rows, w, bias):
    out = np.empty(rows.size, dtype=np.float64)
    for t in range(rows.size):
        i = rows[t]
        s = bias
        for k in range(indptr[i], indptr[i + 1]):
            s += vals[k] * w[cols[k]]
        out[t] = s
    return out


def train(
    dataset: Dataset,
    labeled_ids,
    config: TrainConfig = TrainConfig(),
    seed: int = 0,
) -> SvmModel:
    """Train on the examples of ``dataset`` named by ``labeled_ids``.

    Coordinate order is a fresh random permutation per pass, drawn from
    ``seed``; identical inputs and seed give a bitwise-identical model.
    Stops when the largest per-coordinate KKT violation drops to
    ``config.tolerance``, or after ``config.max_passes`` sweeps (reported
    in the diagnostics).

    A single-class labeled set yields the constant classifier of that
    class: zero weights and alphas, bias equal to the class sign.
    """
    rows = np.asarray(list(labeled_ids), dtype=np.int64)
    if rows.size == 0:
        raise ValueError("labeled set is empty")
    y = dataset.labels(rows)
    indptr, cols, vals = dataset.csr()
    num_features = dataset.num_features

    sub_indptr, sub_cols, sub_vals = _gather_csr(indptr, cols, vals, rows)
    if sub_vals.size and not np.all(np.isfinite(sub_vals)):
        raise ValueError("non-finite feature values in training data")

    if np.all(y == y[0]):
        sign = float(y[0])
        weights = np.zeros(num_features + 1, dtype=np.float64)
        diag = TrainDiagnostics(
            dual_objective=0.0,
            slack_sum_pos=0.0,
            slack_sum_neg=0.0,
            passes=0,
            max_kkt_violation=0.0,
            converged=True,
        )
        return SvmModel(
            weights=weights,
            bias=sign,
            alphas=np.zeros(rows.size, dtype=np.float64),
            training_ids=tuple(int(i) for i in rows),
            diagnostics=diag,
        )

    aug_col = num_features + 1
    caps = np.where(y > 0, config.c_positive, config.c_negative)
    qii = dataset.row_sq_norms()[rows] + 1.0
    alpha = np.zeros(rows.size, dtype=np.float64)
    w_aug = np.zeros(num_features + 2, dtype=np.float64)

    rng = np.random.default_rng(seed)
    passes = 0
    viol = np.inf
    n = rows.size
    active = np.arange(n, dtype=np.int64)
    keep = np.ones(n, dtype=np.bool_)
    upper_bar = np.inf
    lower_bar = -np.inf
    converged = False
    for _ in range(config.max_passes):
        order = active[rng.permutation(active.size)]
        viol, pg_max, pg_min = _cd_pass(
            sub_indptr, sub_cols, sub_vals, y, caps, qii, alpha, w_aug,
            order, aug_col, keep, upper_bar, lower_bar,
        )
        passes += 1
        active = active[keep[active]]
        if viol <= config.tolerance:
            if active.size == n:
                # Convergence only counts on a sweep over everything.
                converged = True
                break
            active = np.arange(n, dtype=np.int64)
            keep[:] = True
            upper_bar = np.inf
            lower_bar = -np.inf
            continue
        upper_bar = pg_max if pg_max > 0.0 else np.inf
        lower_bar = pg_min if pg_min < 0.0 else -np.inf

    bias = float(w_aug[aug_col])
    weights = w_aug[: num_features + 1].copy()
    margins = _decision_kernel(
        sub_indptr, sub_cols, sub_vals, np.arange(rows.size, dtype=np.int64), weights, bias
    )
    if not converged:
        # The last sweep may have covered a shrunk subset; report the
        # whole-set violation of the model actually returned.
        grad = y * margins - 1.0
        pg = np.where(
            alpha <= 0.0, np.minimum(grad, 0.0),
            np.where(alpha >= caps, np.maximum(grad, 0.0), grad),
        )
        viol = float(np.max(np.abs(pg)))
    slack = np.maximum(0.0, 1.0 - y * margins)
    diag = TrainDiagnostics(
        dual_objective=float(alpha.sum() - 0.5 * w_aug @ w_aug),
        slack_sum_pos=float(slack[y > 0].sum()),
        slack_sum_neg=float(slack[y < 0].sum()),
        passes=passes,
        max_kkt_violation=float(viol),
        converged=converged,
    )
    return SvmModel(
        weights=weights,
        bias=bias,
        alphas=alpha,
        training_ids=tuple(int(i) for i in rows),
        diagnostics=diag,
    )


def decision_values(model: SvmModel, dataset: Dataset, ids) -> np.ndarray:
    """Decision values ``w . x + b`` for a batch of example ids."""
    rows = np.asarray(list(ids), dtype=np.int64)
    indptr, cols, vals = dataset.csr()
    return _decision_kernel(indptr, cols, vals, rows, model.weights, model.bias)


def format_model_dump(model: SvmModel) -> str:
    """Text dump for inspection: a ``bias`` line, then nonzero weights."""
    lines = [f"bias {model.bias!r}"]
    for fid in np.nonzero(model.weights)[0]:
        lines.append(f"w {int(fid)} {model.weights[fid]!r}")
    return "\n".join(lines) + "\n"
