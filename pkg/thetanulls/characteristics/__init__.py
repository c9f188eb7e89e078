from .characteristic import (
    Characteristic,
    CharacteristicSequence,
    Parity,
    enumerate_characteristics,
    even_characteristics,
    parity,
    parity_counts,
    product_characteristic,
    product_of,
    product_vanishing_characteristics,
)
from .counts import (
    CountReport,
    conjectural_torsion_bound,
    corollary_bound,
    even_count,
    hyperelliptic_theta2,
    odd_count,
    quadric_count,
    theta2_bound,
)
from .hyperelliptic import (
    BranchSubsetClass,
    branch_point_characteristic,
    hyperelliptic_enumerated_count,
    hyperelliptic_nonvanishing_classes,
    hyperelliptic_parity_profile,
    hyperelliptic_theta2_count,
    iter_branch_classes,
)
