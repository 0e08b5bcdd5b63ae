# core/tolerances.py
"""Numerical tolerances shared by every module (all matrices are at most 4x4)."""

TAU_HERM = 1e-12        # max |m_ij - conj(m_ji)|
TAU_TR = 1e-12          # |Tr(rho) - 1|
TAU_PSD = 1e-10         # smallest admissible eigenvalue is -TAU_PSD
TAU_IMAG = 1e-12        # imaginary residual of an expectation value
TAU_UNIT = 1e-12        # unit-norm vectors
TAU_ORTH = 1e-10        # a . b for an orthogonal observable pair
TAU_SYM = 1e-10         # SWAP symmetry / t_ij = t_ji
TAU_X = 1e-12           # off-pattern entries of an X state
TAU_CLI_UNIT = 1e-9     # unit-norm check for vectors typed on the command line
BOUNDARY_TAG = 1e-6     # distance to an analytic boundary for the "boundary" tag
