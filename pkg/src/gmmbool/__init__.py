"""Resilient Boolean functions from generalized Maiorana-McFarland concatenation."""

from .core import (TruthTable, WalshSpectrum, AnfForm, AutocorrelationTable, Claims, Certificate,
                   CapExceeded, walsh_spectrum, walsh_naive, nonlinearity, resiliency_order, anf,
                   truth_table, degree, autocorrelation, autocorrelation_direct, sac_check,
                   direct_sum, direct_sum_nonlinearity, certify)
from .params import (Infeasible, ParamQuery, ParamResult, GmmProfile, k_base, k_sac, k_degopt,
                     k_multi, solve, claimed_nonlinearity, profile_search)
from .construct import GmmPlan, build_c1, build_c2, build_c3, build_generalized, make_prefix_tiling
from .vectorial import (LinearCode, DisjointCodeSet, VectorialFunction, search_disjoint_codes,
                        rho_map, build_c4, vectorial_profile)

__version__ = "0.1.0"
