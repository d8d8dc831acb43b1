"""ordbench: exact-arithmetic workbench for order structures.

Finite posets with decidable everything, the antichain powerspace monad,
quasi-deflations and quasi-retractions, probability valuations with an exact
stochastic order, grid discretizations, path spaces, and three finitely
presented countable posets. All arithmetic is rational; all iteration orders
are deterministic.
"""

from .posets import (
    MapReport,
    MonotoneMap,
    Poset,
    PosetError,
    enumerate_posets,
    format_map,
    format_poset,
    map_predicates,
    parse_map,
    parse_poset,
    poset_to_dot,
)
from .smyth import (
    FIN_CAP,
    FinMap,
    MonadLawsReport,
    QuasiSectionReport,
    StagePreconditionError,
    canonical_quasi_section,
    check_monad_laws,
    check_quasi_retraction,
    dagger,
    eta,
    eta_map,
    fin_antichains,
    fin_poset,
    format_antichain,
    format_finmap,
    koenig_chain,
    mu,
    parse_antichain,
    parse_finmap,
    smyth_map,
)
from .deflations import (
    ControlledQuasiDeflation,
    ControlledReport,
    QuasiDeflation,
    QuasiDeflationReport,
    check_controlled,
    check_quasi_deflation,
    eta_deflation,
    format_quasi_deflation,
    parse_quasi_deflation,
    product_qd,
    qd_self_compose,
    qfs_separator,
    separating_set_from_controlled,
)
from .valuations import (
    GRID_CAP,
    LargestBelowReport,
    MixingReport,
    SetFunctionRounding,
    StochasticOrderReport,
    Valuation,
    ValuationError,
    WayBelowReport,
    WeightRounding,
    dirac,
    failed_deflation_a,
    failed_deflation_b,
    failed_deflation_c,
    format_valuation,
    grid,
    grid_poset,
    maximal_below_grid,
    minimal_upper_bounds_grid,
    mixing_oracle,
    parse_valuation,
    pushforward,
    pushforward_preimage,
    round_down_strict,
    stochastic_leq,
    stochastic_leq_report,
    tightly_below,
    way_below,
    way_below_report,
)
from .treeval import (
    AdmissibleMap,
    AdmissibleReport,
    admissible,
    admissible_lub,
    admissible_to_valuation,
    check_admissible,
    format_admissible,
    parse_admissible,
    path_space,
    valuation_to_admissible,
)
from .lazy import (
    BOT,
    LazyFamily,
    LazyPoset,
    N2,
    NSUM,
    OMEGA,
    T,
    TOP,
    Truncation,
    family_witness,
    format_code,
    hat_f,
    hat_f_rigidity_check,
    n2_family,
    node,
    omega_side,
    parse_code,
    t_family,
    truncate,
)

__version__ = "0.1.0"
