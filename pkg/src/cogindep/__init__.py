"""Estimating cognitive (in)dependence between belief-function sources."""

from .core import (
    Frame,
    MassFunction,
    PignisticDistribution,
    categorical,
    condition,
    conjunctive,
    decondition,
    disjunctive,
    discount,
    jousselme,
    make_mass,
    mean_combine,
    pignistic,
    vacuous,
)
from .clustering import Partition, cluster_masses, distance_matrix
from .datagen import GenConfig, generate
from .independence import AnalysisConfig, IndependenceReport, analyze
from .product import ProductFrame, closed_form_adjust, independence_adjust, reliability_discount

__all__ = [
    "AnalysisConfig",
    "Frame",
    "GenConfig",
    "IndependenceReport",
    "MassFunction",
    "Partition",
    "PignisticDistribution",
    "ProductFrame",
    "analyze",
    "categorical",
    "closed_form_adjust",
    "cluster_masses",
    "condition",
    "conjunctive",
    "decondition",
    "disjunctive",
    "discount",
    "distance_matrix",
    "generate",
    "independence_adjust",
    "jousselme",
    "make_mass",
    "mean_combine",
    "pignistic",
    "reliability_discount",
    "vacuous",
]
