from dataclasses import dataclass
from typing import Tuple

import numpy as np

from formstab.errors import InvalidDimensionError
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.matcore import Permutation

NEAR_DEGENERATE_FACTOR = 10.0
NEAR_DEGENERATE_WARNING = 'near_degenerate_spectrum'


@dataclass(frozen=True, eq=False)
class EigenClustering:
    """Distinct eigenvalue clusters of a spectrum.

    values are the cluster means (diagnostic only, the commutant depends on
    the multiplicities alone). grouping sends original index i to its
    position in cluster order.
    """
    values: np.ndarray
    multiplicities: Tuple[int, ...]
    grouping: Permutation
    cluster_tol: float
    min_gap: float

    @property
    def size(self):
        return sum(self.multiplicities)

    @property
    def count(self):
        return len(self.multiplicities)

    @property
    def near_degenerate(self):
        return self.min_gap < NEAR_DEGENERATE_FACTOR * self.cluster_tol

    @property
    def offsets(self):
        return tuple(int(x) for x in np.concatenate([[0], np.cumsum(self.multiplicities)]))


def cluster_eigenvalues(lam, cluster_tol=None, tolerances=DEFAULT_TOLERANCES):
    """Greedy left-to-right clustering of a spectrum.

    A new cluster starts whenever the gap to the previous (sorted) value
    exceeds cluster_tol, so chains of small gaps merge into one cluster.
    cluster_tol defaults to tolerances.cluster_tol * max(1, max|lam|).
    """
    lam = np.asarray(lam, dtype=np.float64).ravel()
    if lam.size == 0:
        raise InvalidDimensionError("Cannot cluster an empty spectrum")
    if cluster_tol is None:
        cluster_tol = tolerances.cluster_tol_for(lam)

    order = np.argsort(lam, kind='stable')
    ordered = lam[order]
    gaps = np.diff(ordered)
    breaks = np.flatnonzero(gaps > cluster_tol) + 1
    bounds = np.concatenate([[0], breaks, [ordered.size]])

    values = np.array([ordered[a:b].mean() for a, b in zip(bounds[:-1], bounds[1:])])
    multiplicities = tuple(int(b - a) for a, b in zip(bounds[:-1], bounds[1:]))
    min_gap = float(gaps[breaks - 1].min()) if breaks.size else float('inf')
    return EigenClustering(values=values, multiplicities=multiplicities,
                           grouping=Permutation.from_order(order),
                           cluster_tol=float(cluster_tol), min_gap=min_gap)
