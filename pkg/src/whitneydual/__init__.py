"""Whitney duals of graded posets built from Whitney labelings."""

from .dual import (
    build_Q,
    build_R,
    chain_bijection_check,
    chain_poset,
    exchange_classes,
    mobius_Q_check,
    sort_word,
    verify_R_iso_Q,
)
from .labeling import (
    ChainEdgeLabeling,
    EdgeLabeling,
    GammaOrder,
    LexOrder,
    classify_word,
    quadratic_exchange,
    verify_CW,
    verify_ER,
    verify_ER_star,
    verify_EW,
    word_of_labels,
)
from .poset import (
    Poset,
    are_isomorphic,
    build_poset,
    is_whitney_dual_pair,
    mobius,
    saturated_chains,
    whitney_first,
    whitney_second,
)
from .qsym import QSymFundamental, flag_qsym, flag_vectors, omega

__version__ = "0.1.0"
