"""Finite, exhaustive checks of Arrow's impossibility theorem and its
ultrafilter and naturality reformulations."""

from .base import HypothesesNotMet, InternalContradiction, Verdict
from .orders import AlternativeSet, Injection, Relation, alternatives
from .profiles import Domain, Profile, explicit, full_linear, full_weak
from .swf import Swf, borda, constant_swf, dictatorship, pairwise_majority, reversal_swf

__all__ = [
    "AlternativeSet", "Domain", "HypothesesNotMet", "Injection", "InternalContradiction",
    "Profile", "Relation", "Swf", "Verdict", "alternatives", "borda", "constant_swf",
    "dictatorship", "explicit", "full_linear", "full_weak", "pairwise_majority", "reversal_swf",
]
