"""Member-based C-cluster partitioning of mass functions under the Jousselme distance."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import MassFunction, jaccard
from .errors import EmptyClusterError, FrameMismatchError, TooFewObjectsError

MAX_PASSES = 100


@dataclass(frozen=True)
class Partition:
    """Assignment of ``n`` objects to ``n_clusters`` clusters."""

    assignment: tuple[int, ...]
    n_clusters: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(int(k) for k in self.assignment))
        if self.n_clusters < 1:
            raise ValueError("a partition needs at least one cluster")
        bad = [k for k in self.assignment if not 0 <= k < self.n_clusters]
        if bad:
            raise ValueError(f"cluster indices {bad} outside 0..{self.n_clusters - 1}")

    @property
    def n_objects(self) -> int:
        return len(self.assignment)

    @property
    def clusters(self) -> tuple[frozenset[int], ...]:
        members: list[set[int]] = [set() for _ in range(self.n_clusters)]
        for obj, k in enumerate(self.assignment):
            members[k].add(obj)
        return tuple(frozenset(s) for s in members)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.clusters]

    @classmethod
    def from_clusters(cls, clusters: Sequence[Sequence[int]], n_objects: int | None = None) -> "Partition":
        if n_objects is None:
            n_objects = sum(len(c) for c in clusters)
        assignment = [-1] * n_objects
        for k, members in enumerate(clusters):
            for obj in members:
                if assignment[obj] != -1:
                    raise ValueError(f"object {obj} appears in two clusters")
                assignment[obj] = k
        if -1 in assignment:
            raise ValueError(f"object {assignment.index(-1)} is not assigned")
        return cls(tuple(assignment), len(clusters))

    def to_text(self) -> str:
        return "".join(f"{obj}\t{k}\n" for obj, k in enumerate(self.assignment))


def _dense(masses: Sequence[MassFunction]) -> tuple[np.ndarray, np.ndarray]:
    """Masses as rows over the focal sets that occur, plus their Jaccard matrix."""
    keys = sorted(set().union(*(m.focals for m in masses)))
    col = {k: j for j, k in enumerate(keys)}
    x = np.zeros((len(masses), len(keys)))
    for i, m in enumerate(masses):
        for b, v in m.items():
            x[i, col[b]] = v
    jac = np.array([[jaccard(a, b) for b in keys] for a in keys])
    return x, jac


def distance_matrix(masses: Sequence[MassFunction]) -> np.ndarray:
    """Pairwise Jousselme distances (read-only ``n × n`` array).

    The Jaccard weights are only built over focal sets present in the list,
    never over the whole power set.
    """
    if not masses:
        raise TooFewObjectsError("distance_matrix needs at least one mass function")
    frame = masses[0].frame
    for m in masses:
        if m.frame != frame:
            raise FrameMismatchError(f"frames differ: {frame.labels} vs {m.frame.labels}")
    x, jac = _dense(masses)
    n = len(masses)
    dm = np.zeros((n, n))
    for i in range(n - 1):
        diff = x[i] - x[i + 1 :]
        q = 0.5 * np.einsum("rk,kl,rl->r", diff, jac, diff)
        dm[i, i + 1 :] = np.minimum(1.0, np.sqrt(np.maximum(q, 0.0)))
    dm = dm + dm.T
    dm.setflags(write=False)
    return dm


def cross_distances(masses1: Sequence[MassFunction], masses2: Sequence[MassFunction]) -> np.ndarray:
    """d(masses1[l], masses2[l]) for every object l."""
    if len(masses1) != len(masses2):
        raise ValueError(f"{len(masses1)} vs {len(masses2)} mass functions")
    frames = {m.frame for m in masses1} | {m.frame for m in masses2}
    if len(frames) > 1:
        raise FrameMismatchError("all mass functions must share one frame")
    x, jac = _dense(list(masses1) + list(masses2))
    n = len(masses1)
    diff = x[:n] - x[n:]
    q = 0.5 * np.einsum("rk,kl,rl->r", diff, jac, diff)
    return np.minimum(1.0, np.sqrt(np.maximum(q, 0.0)))


def dissimilarity(obj: int, cluster: int, dm: np.ndarray, partition: Partition) -> float:
    """Mean distance from ``obj`` to the members of ``cluster`` (itself included)."""
    members = sorted(partition.clusters[cluster])
    if not members:
        raise EmptyClusterError(f"cluster {cluster} is empty")
    return float(np.mean(dm[obj, members]))


def _dissimilarities(dm: np.ndarray, assignment: np.ndarray, n_clusters: int) -> np.ndarray:
    # Column k holds D(o, Cl_k) for every object o; inf for empty clusters.
    out = np.full((dm.shape[0], n_clusters), np.inf)
    for k in range(n_clusters):
        members = np.flatnonzero(assignment == k)
        if members.size:
            out[:, k] = dm[:, members].mean(axis=1)
    return out


def _pick(scores: np.ndarray, candidates: np.ndarray, rng: random.Random) -> int:
    best = scores[candidates].max()
    tied = [int(c) for c in candidates if scores[c] == best]
    return tied[0] if len(tied) == 1 else rng.choice(tied)


def _seed_partition(dm: np.ndarray, n_clusters: int, rng: random.Random) -> np.ndarray:
    # Farthest-point seeding over the "core" objects (summed distance at most
    # the median); outlier seeds would otherwise end up as frozen tiny clusters.
    n = dm.shape[0]
    spread = dm.sum(axis=1)
    core = np.flatnonzero(spread <= np.median(spread))
    seeds = [_pick(spread, core, rng)]
    while len(seeds) < n_clusters:
        pool = np.setdiff1d(core, seeds)
        if not pool.size:
            pool = np.setdiff1d(np.arange(n), seeds)
        nearest = dm[:, seeds].min(axis=1)
        seeds.append(_pick(nearest, pool, rng))
    assignment = np.argmin(dm[:, seeds], axis=1)
    assignment[seeds] = np.arange(n_clusters)
    return assignment


def _repair_empty(dm: np.ndarray, assignment: np.ndarray, n_clusters: int) -> None:
    while True:
        sizes = np.bincount(assignment, minlength=n_clusters)
        empty = np.flatnonzero(sizes == 0)
        if not empty.size:
            return
        own = _dissimilarities(dm, assignment, n_clusters)[np.arange(len(assignment)), assignment]
        own[sizes[assignment] < 2] = -np.inf
        assignment[int(np.argmax(own))] = empty[0]


def reassign(dm: np.ndarray, partition: Partition) -> Partition:
    """One batch pass: every object moves to its least dissimilar cluster.

    Ties go to the lowest cluster index.
    """
    assignment = np.array(partition.assignment)
    d = _dissimilarities(dm, assignment, partition.n_clusters)
    return Partition(tuple(np.argmin(d, axis=1)), partition.n_clusters)


def cluster_masses(
    masses: Sequence[MassFunction],
    n_clusters: int,
    seed: int = 0,
    dm: np.ndarray | None = None,
) -> Partition:
    """Partition ``masses`` into ``n_clusters`` clusters.

    Farthest-point seeding among the non-outlying objects, then batch reassignment
    until no object moves (or ``MAX_PASSES`` passes).  The seeded RNG only
    breaks exact ties during seeding.
    """
    n = len(masses)
    if n_clusters < 1 or n < n_clusters:
        raise TooFewObjectsError(f"cannot split {n} objects into {n_clusters} clusters")
    if dm is None:
        dm = distance_matrix(masses)
    rng = random.Random(seed)
    assignment = _seed_partition(dm, n_clusters, rng)
    for _ in range(MAX_PASSES):
        d = _dissimilarities(dm, assignment, n_clusters)
        new = np.argmin(d, axis=1)
        _repair_empty(dm, new, n_clusters)
        if np.array_equal(new, assignment):
            break
        assignment = new
    return Partition(tuple(assignment), n_clusters)
