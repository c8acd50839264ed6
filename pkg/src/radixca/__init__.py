"""radixca: a cellular-automaton arithmetic engine.

Rules for any alphabet size and neighborhood range, evaluated at three
levels: per site (rule tables and their equivalent update forms), per
neighborhood (de Bruijn graph dynamics), and per whole ring (packed-state
transition tables, Gardens of Eden, attractors). On top of the global
level, any map on [0,1] compiles into a whole-ring CA at precision
p^-Ns with exact rational stepping.
"""

from .debruijn import (
    DeBruijnGraph,
    adjacency_entry,
    build_colored_graph,
    enumerate_spatial_fixed_points,
    export_dot,
    fixed_point_subgraph,
    nonlocal_step,
    successors,
)
from .digits import (
    DigitVector,
    boxcar,
    decimal_string,
    digit_of,
    digits_lsd,
    from_digits,
    radix_convert,
    rational_digit,
    scan_digit,
    scan_divmod,
)
from .errors import DomainContractError, GuardExceeded
from .globaldyn import (
    Attractor,
    GlobalIndex,
    GroupReport,
    TransitionTable,
    attractors,
    characteristic_samples,
    characteristic_value,
    characteristic_value_direct,
    decode,
    encode,
    gardens_of_eden,
    global_ca_step,
    shift_group_report,
    transition_table,
)
from .lattice import RingState, SpacetimeRaster, evolve, neighborhood_sequence, step
from .realmap import (
    BifurcationRow,
    LogisticMap,
    NumericMap,
    OrbitReport,
    PolynomialMap,
    asymptotic_step,
    bifurcation_scan,
    classify_behavior,
    cycle_detect,
    induced_ca_step,
    logistic_ca_step,
    orbit_report,
)
from .rules import (
    RuleSpec,
    TotalisticRuleSpec,
    code_of_rule,
    expand_totalistic,
    identity_rule,
    local_update,
    neighborhood_value,
    parse_rule,
    rule_from_code,
    shift_rule,
    totalistic_from_code,
    totalistic_update,
)

__version__ = "0.1.0"
