"""Statistical estimation of the cognitive (in)dependence of two sources.

Both sources' mass functions are clustered separately.  Clusters are matched
greedily on their overlap, every matched pair yields a mass on {I, notI}
and a mass on {I, P, Pbar}, and the pair masses are averaged into one
mass per direction (S1 with respect to S2, and S2 with respect to S1).

I_d is the pignistic probability of I in the averaged {I, notI} mass, that
is ``mean(alpha * (1 - beta) + (1 - alpha) / 2)``: high overlap (beta)
between matched clusters means dependence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .clustering import Partition, cluster_masses, cross_distances, distance_matrix
from .core import Frame, MassFunction, conjunctive, decondition, mean_combine, pignistic
from .errors import EmptyListError, LengthMismatchError, PartitionMismatchError
from .product import DEP_I, DEP_N, DEP_NOT_I, DEP_P, DEPENDENCE_FRAME

INDEPENDENCE_FRAME = Frame(("I", "notI"))
IND_I = 0b01
IND_NOT_I = 0b10
IND_ALL = 0b11

ALPHA_POLICIES = ("one", "cluster-size")


@dataclass(frozen=True)
class CorrespondenceMatrix:
    """Overlap ratios β between the clusters of a referent source (rows) and the other source (columns)."""

    values: np.ndarray
    referent: int

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]
    betas: tuple[float, ...]


@dataclass(frozen=True)
class PairLink:
    pair: tuple[int, int]
    beta: float
    alpha: float = 1.0
    conf: float | None = None

    def __post_init__(self) -> None:
        for name in ("beta", "alpha", "conf"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")


def correspondence_matrices(p1: Partition, p2: Partition) -> tuple[CorrespondenceMatrix, CorrespondenceMatrix]:
    """β matrices with S1 as referent (rows = S1 clusters) and with S2 as referent.

    A referent cluster with no members gets a zero row.
    """
    if p1.n_objects != p2.n_objects or p1.n_clusters != p2.n_clusters:
        raise PartitionMismatchError(
            f"partitions differ: {p1.n_objects} objects/{p1.n_clusters} clusters vs "
            f"{p2.n_objects}/{p2.n_clusters}"
        )
    c = p1.n_clusters
    overlap = np.zeros((c, c))
    np.add.at(overlap, (np.array(p1.assignment), np.array(p2.assignment)), 1.0)
    size1 = overlap.sum(axis=1, keepdims=True)
    size2 = overlap.sum(axis=0, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        m1 = np.where(size1 > 0, overlap / size1, 0.0)
        m2 = np.where(size2 > 0, overlap / size2, 0.0).T
    return CorrespondenceMatrix(m1, referent=1), CorrespondenceMatrix(m2, referent=2)


def greedy_match(m: CorrespondenceMatrix | np.ndarray) -> Matching:
    """Pair rows and columns by repeatedly taking the largest remaining entry.

    On equal maxima the smallest row index wins, then the smallest column.
    Pairs are returned sorted by row.
    """
    values = np.asarray(m.values if isinstance(m, CorrespondenceMatrix) else m, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError(f"greedy_match needs a square matrix, got shape {values.shape}")
    work = values.copy()
    pairs = []
    for _ in range(values.shape[0]):
        # argmax scans row-major, so the first maximum has the lowest (row, col)
        row, col = np.unravel_index(int(np.argmax(work)), work.shape)
        pairs.append((int(row), int(col)))
        work[row, :] = -np.inf
        work[:, col] = -np.inf
    pairs.sort()
    return Matching(tuple(pairs), tuple(float(values[r, c]) for r, c in pairs))


def independence_mass(i: float, not_i: float, ignorance: float) -> MassFunction:
    return MassFunction(INDEPENDENCE_FRAME, {IND_I: i, IND_NOT_I: not_i, IND_ALL: ignorance})


def dependence_mass(
    I: float = 0.0,
    P: float = 0.0,
    N: float = 0.0,
    IP: float = 0.0,
    IN: float = 0.0,
    IPN: float = 0.0,
) -> MassFunction:
    """Mass on {I, P, Pbar}; ``N`` stands for Pbar (negative dependence)."""
    return MassFunction(
        DEPENDENCE_FRAME,
        {
            DEP_I: I,
            DEP_P: P,
            DEP_N: N,
            DEP_I | DEP_P: IP,
            DEP_I | DEP_N: IN,
            DEPENDENCE_FRAME.full: IPN,
        },
    )


def swept_dependence_mass(alpha: float, beta: float, gamma: float) -> MassFunction:
    """Dependence mass of a matched pair with attenuation alpha, overlap beta and conflict gamma."""
    return pair_dependence_mass(PairLink((0, 0), beta=beta, alpha=alpha, conf=gamma))


def pair_independence_mass(link: PairLink) -> MassFunction:
    a, b = link.alpha, link.beta
    return MassFunction._raw(INDEPENDENCE_FRAME, {IND_I: a * (1.0 - b), IND_NOT_I: a * b, IND_ALL: 1.0 - a})


def aggregate_independence(pair_masses: Sequence[MassFunction]) -> MassFunction:
    if not pair_masses:
        raise EmptyListError("no pair masses to aggregate")
    return mean_combine(pair_masses)


def independence_degree(m: MassFunction) -> tuple[float, float]:
    """(I_d, notI_d): pignistic probabilities of I and notI."""
    betp = pignistic(m)
    return betp[0], betp[1]


def cluster_conflict(members_i: frozenset[int], members_j: frozenset[int], cross: np.ndarray) -> float:
    """Mean cross-source distance over the objects both clusters share; 1 if they share none.

    ``cross[l]`` is the distance between the two sources' masses for object l.
    """
    shared = sorted(members_i & members_j)
    if not shared:
        return 1.0
    return float(np.mean(cross[shared]))


def pair_dependence_mass(link: PairLink) -> MassFunction:
    if link.conf is None:
        raise ValueError(f"conflict of pair {link.pair} has not been computed")
    a, b, c = link.alpha, link.beta, link.conf
    return MassFunction._raw(
        DEPENDENCE_FRAME,
        {
            DEP_I: a * (1.0 - b),
            DEP_P: a * b * (1.0 - c),
            DEP_N: a * b * c,
            DEP_I | DEP_P: (1.0 - a) * (1.0 - c),
            DEP_I | DEP_N: (1.0 - a) * c,
        },
    )


def pair_dependence_by_combination(link: PairLink) -> MassFunction:
    """Same mass as :func:`pair_dependence_mass`, built with the belief operators.

    The conflict mass, conditional on notI = {P, Pbar}, is deconditioned and
    combined conjunctively with the refined {I, notI} mass of the pair.
    """
    if link.conf is None:
        raise ValueError(f"conflict of pair {link.pair} has not been computed")
    a, b, c = link.alpha, link.beta, link.conf
    conditional = MassFunction._raw(DEPENDENCE_FRAME, {DEP_P: 1.0 - c, DEP_N: c})
    refined = MassFunction._raw(
        DEPENDENCE_FRAME, {DEP_I: a * (1.0 - b), DEP_NOT_I: a * b, DEPENDENCE_FRAME.full: 1.0 - a}
    )
    return conjunctive(decondition(conditional, DEP_NOT_I), refined)


def aggregate_dependence(pair_masses: Sequence[MassFunction]) -> MassFunction:
    if not pair_masses:
        raise EmptyListError("no pair masses to aggregate")
    return mean_combine(pair_masses)


@dataclass(frozen=True)
class AnalysisConfig:
    n_clusters: int | None = None  # defaults to the frame size
    seed: int = 0
    alpha_policy: str = "one"

    def __post_init__(self) -> None:
        if self.alpha_policy not in ALPHA_POLICIES:
            raise ValueError(f"unknown alpha policy {self.alpha_policy!r}; expected one of {ALPHA_POLICIES}")


@dataclass(frozen=True)
class DirectionReport:
    """(In)dependence of source ``source`` with respect to source ``other``."""

    source: int
    other: int
    matrix: CorrespondenceMatrix
    matching: Matching
    links: tuple[PairLink, ...]
    independence: MassFunction
    dependence: MassFunction
    i_d: float
    not_i_d: float
    betp_i: float
    betp_p: float
    betp_n: float

    def dependence_argmax(self) -> str:
        """Label among I, P, Pbar with the largest pignistic degree."""
        degrees = {"I": self.betp_i, "P": self.betp_p, "Pbar": self.betp_n}
        return max(degrees, key=degrees.get)

    def to_dict(self) -> dict:
        dep = self.dependence
        return {
            "source": f"S{self.source}",
            "other": f"S{self.other}",
            "I_d": self.i_d,
            "notI_d": self.not_i_d,
            "independence_mass": {
                "I": self.independence[IND_I],
                "notI": self.independence[IND_NOT_I],
                "I+notI": self.independence[IND_ALL],
            },
            "dependence_mass": {
                "I": dep[DEP_I],
                "P": dep[DEP_P],
                "Pbar": dep[DEP_N],
                "I+P": dep[DEP_I | DEP_P],
                "I+Pbar": dep[DEP_I | DEP_N],
            },
            "betp": {"I": self.betp_i, "P": self.betp_p, "Pbar": self.betp_n},
            "pairs": [
                {"clusters": list(lk.pair), "beta": lk.beta, "alpha": lk.alpha, "conf": lk.conf}
                for lk in self.links
            ],
        }


@dataclass(frozen=True)
class IndependenceReport:
    partitions: tuple[Partition, Partition]
    forward: DirectionReport  # S1 with respect to S2
    backward: DirectionReport  # S2 with respect to S1
    config: AnalysisConfig = field(default_factory=AnalysisConfig)

    @property
    def directions(self) -> tuple[DirectionReport, DirectionReport]:
        return self.forward, self.backward

    def to_dict(self) -> dict:
        return {
            "n_clusters": self.partitions[0].n_clusters,
            "seed": self.config.seed,
            "alpha_policy": self.config.alpha_policy,
            "directions": [d.to_dict() for d in self.directions],
        }


def _alpha(policy: str, cluster_size: int, n_objects: int) -> float:
    if policy == "one":
        return 1.0
    return cluster_size / n_objects


def _direction(
    source: int,
    matrix: CorrespondenceMatrix,
    own: Partition,
    other: Partition,
    cross: np.ndarray,
    policy: str,
) -> DirectionReport:
    matching = greedy_match(matrix)
    own_clusters, other_clusters = own.clusters, other.clusters
    links = []
    for (ki, kj), beta in zip(matching.pairs, matching.betas):
        links.append(
            PairLink(
                (ki, kj),
                beta=beta,
                alpha=_alpha(policy, len(own_clusters[ki]), own.n_objects),
                conf=cluster_conflict(own_clusters[ki], other_clusters[kj], cross),
            )
        )
    ind = aggregate_independence([pair_independence_mass(lk) for lk in links])
    dep = aggregate_dependence([pair_dependence_mass(lk) for lk in links])
    i_d, not_i_d = independence_degree(ind)
    betp = pignistic(dep)
    return DirectionReport(
        source=source,
        other=3 - source,
        matrix=matrix,
        matching=matching,
        links=tuple(links),
        independence=ind,
        dependence=dep,
        i_d=i_d,
        not_i_d=not_i_d,
        betp_i=betp[0],
        betp_p=betp[1],
        betp_n=betp[2],
    )


def analyze(
    masses1: Sequence[MassFunction],
    masses2: Sequence[MassFunction],
    config: AnalysisConfig | None = None,
) -> IndependenceReport:
    """Estimate the (in)dependence of two sources from their aligned mass functions.

    ``masses1[l]`` and ``masses2[l]`` must describe the same object ``l``.
    Both sources are clustered with the same seed, so a source analysed
    against itself gets identical partitions.
    """
    config = config or AnalysisConfig()
    if len(masses1) != len(masses2):
        raise LengthMismatchError(f"sources hold {len(masses1)} and {len(masses2)} mass functions")
    if not masses1:
        raise LengthMismatchError("sources are empty")
    n_clusters = config.n_clusters or len(masses1[0].frame)
    p1 = cluster_masses(masses1, n_clusters, config.seed, dm=distance_matrix(masses1))
    p2 = cluster_masses(masses2, n_clusters, config.seed, dm=distance_matrix(masses2))
    cross = cross_distances(masses1, masses2)
    m1, m2 = correspondence_matrices(p1, p2)
    return IndependenceReport(
        partitions=(p1, p2),
        forward=_direction(1, m1, p1, p2, cross, config.alpha_policy),
        backward=_direction(2, m2, p2, p1, cross, config.alpha_policy),
        config=config,
    )
