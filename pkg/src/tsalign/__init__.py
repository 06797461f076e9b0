"""Elastic time-series alignment: DTW with affine and regional variants.

Alignment methods
    dtw      plain dynamic time warping under a Sakoe-Chiba band
    adtw     joint alignment plus global amplitude scaling/offset (hard EM)
    rdtw     alignment on window-averaged regional costs
    gardtw   global affine fit combined with regional costs (hard EM)
    lardtw   per-window local affine fit in closed form

Support
    simulate  ground-truth generators (global warp/affine, components)
    evaluate  displacement scores, 1-NN classification, tuning, comparisons
    cli       dataset I/O and the command-line interface
"""

from .affine import (
    AffineParams,
    EmAlignment,
    EmConfig,
    ScalingBounds,
    adtw,
    affine_fit,
    affine_objective,
    apply_affine,
)
from .combined import (
    WindowStats,
    gardtw,
    gardtw_affine_fit,
    gardtw_objective,
    lardtw,
    local_affine_fit,
    local_cost,
    local_cost_table,
)
from .core import (
    Alignment,
    AlignmentPath,
    BandConfig,
    CellCost,
    DpResult,
    as_series,
    dp_align,
    dtw,
    pointwise_cost,
    validate_path,
)
from .errors import ConfigError, DataError
from .evaluate import (
    LabeledDataset,
    MethodConfig,
    MethodKind,
    TuningGrid,
    average_ranks,
    compute_measure,
    dataset_mean_scores,
    exceeds_critical_difference,
    mc_score,
    mg_score,
    one_nn,
    tune_params,
    win_loss,
    z_normalize,
)
from .regional import rdtw, regional_cost_direct, regional_cost_table
from .simulate import (
    ComponentConfig,
    GlobalAffineConfig,
    TrueAlignment,
    WarpConfig,
    component_instance,
    global_affine_instance,
    sample_warp,
    window_component,
)

__version__ = "0.1.0"
