"""Random symmetric matrices with point-group symmetry.

Build the most general random real symmetric matrix invariant under a
discrete rotation group (cyclic, tetrahedral, octahedral, cubic),
decompose it into irrep combination blocks with predicted statistical
widths, and measure by seeded Monte Carlo which irrep or angular
momentum captures the ground state.
"""

from .errors import InvalidInputError, NumericFailureError
from .groups import (
    PairOrbitStructure,
    PointGroup,
    build_group,
    build_invariant,
    check_invariance,
    pair_orbits,
    relabel,
)
from .irreps import (
    CensusResult,
    CensusRow,
    CnBlockSet,
    IrrepBlockSpec,
    block_spectra,
    cn_blocks,
    cn_variance_factors,
    decompose,
    decompose_cyclic,
    decompose_polyhedral,
    ground_state_irrep_census,
    sample_invariant,
    write_census_csv,
)
from .linalg import (
    EigenOptions,
    Spectrum,
    SymMatrix,
    eigensolve,
    multiset_deviation,
    read_matrix_text,
    similarity,
    spectrum_multiset_equal,
    write_matrix_text,
)
from .rng import (
    EnsembleConfig,
    SubStream,
    draw_label_blocks,
    random_sym_block,
    run_trials,
    substream,
)
from .su2 import (
    DimensionTable,
    GsDistribution,
    WidthTable,
    effective_width,
    example_dimension_table,
    f_space,
    gs_distribution,
    legendre,
    sigma_j_sq,
    width_table,
    write_distribution_csv,
    write_width_csv,
)

__version__ = "0.1.0"

__all__ = [
    "InvalidInputError",
    "NumericFailureError",
    "SymMatrix",
    "Spectrum",
    "EigenOptions",
    "eigensolve",
    "similarity",
    "multiset_deviation",
    "spectrum_multiset_equal",
    "write_matrix_text",
    "read_matrix_text",
    "EnsembleConfig",
    "SubStream",
    "substream",
    "random_sym_block",
    "draw_label_blocks",
    "run_trials",
    "PointGroup",
    "PairOrbitStructure",
    "build_group",
    "relabel",
    "pair_orbits",
    "build_invariant",
    "check_invariance",
    "IrrepBlockSpec",
    "decompose",
    "decompose_polyhedral",
    "decompose_cyclic",
    "CnBlockSet",
    "cn_blocks",
    "cn_variance_factors",
    "block_spectra",
    "sample_invariant",
    "CensusRow",
    "CensusResult",
    "ground_state_irrep_census",
    "write_census_csv",
    "legendre",
    "sigma_j_sq",
    "effective_width",
    "width_table",
    "WidthTable",
    "DimensionTable",
    "GsDistribution",
    "f_space",
    "gs_distribution",
    "example_dimension_table",
    "write_width_csv",
    "write_distribution_csv",
    "__version__",
]
