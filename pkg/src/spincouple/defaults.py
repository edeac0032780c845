'''
Static defaults and constants.
'''

FORMAT_VERSION = "spincouple/1"
'''Version tag carried by every machine-readable report.'''

SVD_TOLERANCE = 1e-12
'''Relative threshold for a singular value to count as nonzero.'''
JACOBI_TOLERANCE = 1e-15
'''Off-diagonal ratio at which a Jacobi sweep is considered converged.'''
JACOBI_MAX_SWEEPS = 60
'''Hard stop for Jacobi sweeps.'''
ORTHONORMALITY_TOLERANCE = 1e-12
'''Allowed deviation for the floating Clebsch-Gordan orthonormality check.'''
FLOAT_TOLERANCE = 1e-9
'''Absolute tolerance for eigenvalues and residuals when spins are coupled in double precision.'''

MAX_INPUT = 64*1024
'''Largest ket expression the parser accepts, in characters.'''
MAX_NESTING = 100
'''Deepest parenthesis or unary-minus nesting the parser accepts.'''
MAX_DIGITS = 4000
'''Longest integer literal the parser accepts.'''

MAX_TWICE_J = 40
'''Largest 2j accepted on the command line for Clebsch-Gordan queries.'''
SQUAREFREE_TRIAL_LIMIT = 10**4
'''Largest trial divisor when reducing a radicand; see `squarefree_split`.'''

config = dict(
	color = "auto",
	format = "text",
	basis = "standard_m",
	timestamps = False
)
