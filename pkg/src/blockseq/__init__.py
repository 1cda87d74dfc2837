"""Cyclically block-avoiding sequencings of partial (n,k,t)_lambda-systems."""
from .bounds import (
    BoundsSummary,
    alpha_large_k,
    alpha_main,
    check_condition,
    ell_max,
    lll_params,
    sigma,
    summarize,
)
from .design import (
    Params,
    PartialSystem,
    ValidationReport,
    is_complete,
    is_independent,
    truncate_to_order,
    validate,
)
from .errors import (
    BlockseqError,
    ContractError,
    InputError,
    NonConvergenceError,
    ParameterError,
    RepairStuckError,
    StructuralError,
)
from .generators import bose_sts, random_partial, skolem_sts
from .oracle import exhaustive_max_ell, window_scan_verify
from .sequencer import (
    BufferedClass,
    ClassPartition,
    Presequencing,
    RunReport,
    assemble,
    is_bad_block,
    make_buffered,
    random_partition,
    repair,
    sequence,
)
from .verifier import (
    Sequencing,
    coloring_from_sequencing,
    cyclic_span,
    extract_independent_set,
    fractional_cover_weights,
    is_ell_good,
    max_good_ell,
)

__version__ = "0.1.0"
