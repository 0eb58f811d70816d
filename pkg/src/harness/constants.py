from enum import Enum

CSV_COLUMNS = [
    "experiment_id",
    "variant",
    "N",
    "M",
    "alpha",
    "tau",
    "family",
    "replicate",
    "seed",
    "rmse",
    "collapse_flags",
]
GROUP_COLUMNS = ["experiment_id", "variant", "N", "M", "alpha", "tau", "family"]
SUMMARY_SUFFIX = "_summary"

# Placeholder family for variants without a synthetic ensemble.
NO_FAMILY = "-"

ENSEMBLE_SIZES = [5, 10, 20, 30, 50, 100]
SYNTHETIC_SIZES = [10, 25, 50, 100, 200]
INFLATIONS = [1.0, 1.1, 1.2, 1.5, 2.0]
SHRINKAGE_INFLATIONS = [1.0, 1.2]
SHRINKAGE_SIZE = 100
SMALL_ENSEMBLE = 5
REJUVENATION_TAU = 0.04

SINGLE_TARGET = ["climatology"]
CLUSTERED_TARGETS = ["cluster_1", "cluster_2"]


class Preset(str, Enum):
    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"


class Scale(str, Enum):
    PAPER = "paper"
    DESK = "desk"


# total_steps, spinup_steps, replicates
SCALES = {
    Scale.PAPER: (10_000, 1_000, 20),
    Scale.DESK: (2_000, 200, 5),
}


class ErrorCode:
    UNKNOWN_PRESET = "Unknown preset."
    SPINUP_TOO_LONG = "spinup_steps must be smaller than total_steps."
    EMPTY_GRID = "The experiment grid is empty."
    ENSEMBLE_TOO_SMALL = "Ensemble size too small for the chosen variant."
    RESULTS_UNWRITABLE = "Could not write experiment results."
    RESULTS_UNREADABLE = "Could not read experiment results."
    CONFIG_UNREADABLE = "Could not read the experiment configuration."
    INVALID_CONFIG = "Experiment configuration is invalid."
