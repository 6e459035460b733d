"""Robust additive-utility preferences explained by sequences of preference swaps."""

from .covector import (
    Covector,
    IndexSet,
    argument_partition,
    covector_of,
    covector_of_rounded_query,
    covector_sum,
)
from .explain import (
    Explanation,
    SwapRelation,
    delta2_graph,
    explain,
    find_explanation,
    render_sequence,
    shortest_explanation_search,
    worst_case_instance,
)
from .model import (
    STAR,
    Criterion,
    Instance,
    InstanceError,
    PreferenceStatement,
    ReferenceScale,
    build_reference_scales,
    dominates,
    load_instance,
    make_instance,
    parse_instance,
)
from .necessity import (
    Certificate,
    ConeSystem,
    Reasoner,
    cone_membership,
    ilp_oracle,
    is_necessary,
    sampling_falsifier,
)
from .rounding import Query, RoundedQuery, classify_argument_binary, is_bounded, round_query

__version__ = "0.1.0"
