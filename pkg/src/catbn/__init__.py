"""Discrete Bayesian-network structure discovery from categorical survey data.

Mutual-information feature selection, PC-stable and Inter-IAMB learners with
tier blacklists, bootstrap model averaging, and CPT fitting/sampling for
synthetic benchmarks.
"""

from .averaging import (AveragedNetwork, Band, EdgeStrength, averaged_network,
                        classify_confidence, direction_reliable, to_display_graph)
from .citest import DSeparationOracle, G2Test
from .constraints import Admissibility, ConstraintSet, admissibility, build_constraints
from .dataset import (ContingencyTable, Dataset, RecodeSpec, Variable, apply_recode,
                      bootstrap_resample, counts, load_csv, write_csv)
from .graph import (Pdag, SepsetMap, apply_meek_rules, cpdag_of, d_separated,
                    orient_v_structures, shd)
from .infotheory import (CiResult, chi_square_sf, conditional_mi, entropy, g2_test,
                         mutual_information)
from .inter_iamb import inter_iamb, markov_blanket_interiamb, neighbors_from_mb, symmetry_correct
from .params_sim import BayesianNetwork, Cpt, ancestral_sample, exact_marginal, fit_cpts
from .pc_stable import PcConfig, learn_skeleton_pcstable, pc_stable
from .select import RankedFeature, rank_features, select_features

__version__ = "0.1.0"
