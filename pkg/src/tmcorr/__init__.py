"""Exact correlation functions of the Thue-Morse system."""

from .asymptotics import (
    ExponentReport,
    abs_hypercube_mean,
    abs_power_mean_eta,
    exponent_bound,
    hypercube_mean,
    power_mean_eta,
    power_mean_mu,
    wiener_mean,
)
from .config import BudgetExceeded
from .corners import corner_value, gen_rec_value
from .matrices import (
    RationalMatrix,
    b_matrix,
    b_sum,
    eta_vector,
    regseq_cesaro,
    regseq_eval,
)
from .memo import CacheFormatError, MemoStore, default_store
from .npoint import (
    CornerTuple,
    IdentityViolation,
    LagTuple,
    canonicalize,
    eta,
    eta_n,
    eta_pd,
    quad_relations,
    reduce_once,
)
from .oracle import Estimate, PrefixOracle, birkhoff_estimate, pd_autocorr_estimate
from .pair import eta_pair, eta_partial_sum, mu_pm, pair_frequency
from .sequence import pd_prefix, s2, t, tm_prefix, w
from .weighted import BALANCED, WeightPair, eta_f_general, eta_f_pair, eta_f_triple

__version__ = "0.1.0"
