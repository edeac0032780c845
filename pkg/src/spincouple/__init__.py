'''
@module spincouple

Exact coupling of two spins.

Builds the coupled |S, mu> basis of two spin-j particles with exact surd
arithmetic, checks eigenstate claims, computes Clebsch-Gordan coefficients
and classifies entanglement, with two spin-1 photons as the main case.
'''

# Import util first so logging is set before everything else
from .util import (
	SpinCoupleError, DomainError, DivisionByZero, Incompatible, MixedRadicand,
	UnsupportedSpin, IncompatibleDimensions, NoSolution, ZeroVector,
	NonSquareComposite, LabelOutOfRange, KetSyntaxError, ConfigError
)

from .exactnum import GaussianRational, SurdScalar, ComplexSurd, surd_normalize, surd_mul, surd_try_add, to_float
from .linalg import ExactVector, ExactMatrix
from .spinops import (
	SpinJ, SpinOperatorSet, FloatSpinOperators, BasisChange, cartesian_spin1,
	standard_spin, float_spin,
	cartesian_eigenbasis, basis_change, apply, verify_single_photon_actions
)
from .coupling import (
	ProductSpace, TotalSpinOperators, FloatTotalSpinOperators, CoupledState,
	FloatCoupledState, CGCoefficient, total_operators, float_total_operators,
	eigenspace_mu, coupled_eigenbasis, float_coupled_eigenbasis, verify_eigenstate,
	solve_superposition_ansatz, clebsch_gordan, cg_state, expand_in_coupled_basis
)
from .entangle import (
	SchmidtAnalysis, PolarizationState, coefficient_matrix, schmidt_rank,
	schmidt_analyze, exchange_parity, classify_paper_states, bell_states
)
from .ketlang import EvalContext, parse, evaluate
from .ketlang import format as format_ket
