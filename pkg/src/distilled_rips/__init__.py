"""Degree-1 Vietoris-Rips persistence computed on the distilled complex."""

from .core import DistanceMatrix, FiltrationKey, InputError, Order, compare, diameter, filtration_key, load_points
from .distill import DistilledComplex, DistillStats, build_dvr, critical_cofaces, dvr_stats
from .estimator import DistilledRipsPersistence, DistilledVietorisRips
from .lune import LuneResult, compute_lune, lune_components, lune_representatives
from .morse import Matching, MatchCache, MatchClass, match_partner_down, match_partner_up, morse_neighbors, reach, verify_acyclic
from .oracle import brute_apparent_pairs, full_vr_barcode
from .persistence import Barcode, PersistencePair, SimplexwiseFiltration, build_filtration, extract_barcode, ph0, reduce
from .rnc import crnc, export_skeleton, rnc

__version__ = "0.1.0"

__all__ = [
    "Barcode", "DistanceMatrix", "DistillStats", "DistilledComplex", "DistilledRipsPersistence",
    "DistilledVietorisRips", "FiltrationKey", "InputError", "LuneResult", "MatchCache", "MatchClass",
    "Matching", "Order", "PersistencePair", "SimplexwiseFiltration", "brute_apparent_pairs",
    "build_dvr", "build_filtration", "compare", "compute_lune", "critical_cofaces", "crnc",
    "diameter", "dvr_stats", "export_skeleton", "extract_barcode", "filtration_key",
    "full_vr_barcode", "load_points", "lune_components", "lune_representatives",
    "match_partner_down", "match_partner_up", "morse_neighbors", "ph0", "reach", "reduce",
    "rnc", "verify_acyclic",
]
