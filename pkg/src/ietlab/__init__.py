"""Exact-arithmetic laboratory for a non-uniquely ergodic family of interval exchanges."""

from __future__ import annotations

__version__ = "0.1.0"

from .dimension import DimensionSeries, dimension_series
from .family import ParameterSchedule, base_permutation, cycle_word, schedule, theta_closed_form, validate_family
from .iet import Iet, Permutation, build_iet
from .lemmas import run_all, run_lemma
from .measures import MeasureLab
from .rauzy import KeaneViolation, RunWord, realize_word, word_transition

__all__ = [
    "DimensionSeries",
    "Iet",
    "KeaneViolation",
    "MeasureLab",
    "ParameterSchedule",
    "Permutation",
    "RunWord",
    "base_permutation",
    "build_iet",
    "cycle_word",
    "dimension_series",
    "realize_word",
    "run_all",
    "run_lemma",
    "schedule",
    "theta_closed_form",
    "validate_family",
    "word_transition",
]
