from .basis import SectionBasis, second_order_characteristics
from .kempf import kempf_predicted_rank, kempf_verdicts, verify_kempf
from .maps import (
    SymKernelReport,
    default_samples,
    product_evaluation_matrix,
    sample_points,
    sym_kernel_dim,
    sym_kernel_report,
    symmetric_product_matrix,
)
from .rank import RankReport, normalize_rows, numerical_rank, require_reliable
from .scans import (
    SurjectivityException,
    SurjectivityReport,
    TorsionKernelReport,
    g2_irreducible_rank_scan,
    generic_surjectivity_scan,
    kempf_agreement_sweep,
    torsion_kernel_sum,
)
