"""Target attribute-subspace and community mining on attributed networks.

Given two (or more) sample nodes, :func:`tscm` infers the attribute subspace
the samples' community is homogeneous in and extracts the non-redundant
communities that are dense and attribute-coherent under that subspace.
"""
from .benchgen import BenchmarkConfig, BenchmarkInstance, generate, write_benchmark
from .diversity import is_redundant, select_diverse
from .evaluation import EvalReport, f1, quality_q, quality_ss
from .expansion import Community, adjust_community, delta_fitness, subspace_fitness
from .lpa import Partition, detect_nei_community, lpa
from .metrics import Subspace, subspace_cosine, subspace_similarity_nodes, weighted_distance
from .netio import AttributedNetwork, AttributeKind, Kind, attribute_diff, load_network, write_network
from .pipeline import MiningResult, tscm
from .seeding import WeightedAdjacency, construct_seed_set, reweight
from .subspace import compute_subspace
from .targeting import ego_analysis, mine_target_subspace, mine_target_subspace_multi

__version__ = "0.1.0"
