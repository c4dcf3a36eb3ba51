"""Frequency estimation for periodic signals under irregular renewal sampling.

Estimates the frequency of an unknown real periodic signal observed in
additive Gaussian noise at renewal-process time instants, by maximizing the
cumulated Lomb-Scargle periodogram or minimizing a harmonic least-squares
criterion over a frequency grid, with the matching asymptotic-variance
calculator and a Monte-Carlo benchmarking harness.
"""

from .asymptotics import (
    AsymptoticReport,
    clsp_variance,
    information,
    optimal_sd,
    predicted_clsp_sd,
)
from .errors import (
    ClspError,
    ConfigurationError,
    DataError,
    DegenerateDesignError,
    NumericalError,
    SingularGramError,
    UndefinedSnrError,
    ZeroInformationError,
)
from .estimator import EstimateResult, FrequencyGrid, estimate_clsp, estimate_ls
from .harness import (
    ExperimentConfig,
    MethodStats,
    locate_submultiple,
    mix_seed,
    phase_fold,
    reference_signal,
    replicate_time_series,
    report_table,
    run_experiment,
    stats_from_csv,
    stats_to_csv,
)
from .periodogram import (
    GramSystem,
    clsp,
    clsp_grid,
    dump_periodogram,
    empirical_char_fn,
    gram_system,
    ls_criterion,
)
from .sampling import (
    RenewalScheme,
    TimeSeries,
    observe,
    read_time_series,
    sample_instants,
    snr_to_sigma,
    write_time_series,
)
from .signal import PeriodicSignal, fit_trig_poly, product_coeffs, sinusoid

__version__ = "0.1.0"
