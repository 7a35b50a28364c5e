from .checks import (  # noqa: F401
    ConvergenceStudy, SquareCheck, convergence_study, essential_count, flipped_balance, hermiticity_residual,
    square_spectrum_check, symmetry_residual, weyl_count,
)
from .operator import (  # noqa: F401
    DiscreteOperator, Dof, EdgeGrid, SampledSpinor, default_length, default_spacing, discretize,
    kirchhoff_laplacian,
)
from .solvers import EigenSystem, eigs_full, eigs_window  # noqa: F401
