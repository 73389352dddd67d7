from .distributions import *
from .wf_engine import (
    SimulationConfig,
    FrequencyMatrix,
    Trajectory,
    WrightFisherSimulator,
    replicate_stream,
    step,
    simulate,
    iter_ensemble,
    ensemble,
    normalize_proportions,
    normalize_zscores,
    trajectory_from_frequencies,
    initial_envelope_coverage,
)
from .overlap import OverlapReport, segment_overlap, net_potential, potential_profile

__all__ = [
    "ZipfParams",
    "GrowthParams",
    "BinomialEnvelope",
    "zipf_pmf",
    "zipf_expected_rank",
    "corpus_size",
    "binomial_envelope",
    "binomial_envelope_arrays",
    "log_binomial_pmf",
    "sample_multinomial_guarded",
    "zipf_sample_initial",
    "sample_mean_rank",
    "expected_rank_gap",
    "SimulationConfig",
    "FrequencyMatrix",
    "Trajectory",
    "WrightFisherSimulator",
    "replicate_stream",
    "step",
    "simulate",
    "iter_ensemble",
    "ensemble",
    "normalize_proportions",
    "normalize_zscores",
    "trajectory_from_frequencies",
    "initial_envelope_coverage",
    "OverlapReport",
    "segment_overlap",
    "net_potential",
    "potential_profile",
]
