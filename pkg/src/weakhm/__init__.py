"""Extremal t-intersecting families of weak compositions."""
from .compositions import (
    Space,
    binomial,
    count_space,
    enumerate_space,
    remove_coords,
)
from .constructions import (
    FamilyPattern,
    HMBound,
    hm_bound,
    hm_extremal_family,
    independence_threshold,
    pattern_count,
    pattern_family,
    trivial_family,
)
from .intersect import (
    Family,
    FamilyClass,
    FamilyKind,
    agreement,
    classify_family,
    fixation_coords,
    is_independent,
    is_maximal_t_intersecting,
    is_t_intersecting,
)
from .reports import VerifyReport
from .search import (
    SearchResult,
    build_compatibility_graph,
    check_lemma32,
    max_independent_subfamily,
    max_t_intersecting,
    restrict_family,
)
from .verify import (
    verify_family_inequality,
    verify_hm_construction,
    verify_main_small,
    verify_numeric,
)

__version__ = "0.1.0"
