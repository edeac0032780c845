'''
Entanglement of two-particle pure states. The Schmidt rank is exact, from
the rank of the coefficient matrix; Schmidt coefficients and the entropy
come from a one-sided Jacobi SVD, with exact coefficients whenever the
reduced density matrix is already diagonal.
'''

from fractions import Fraction

import numpy as np

from .typings import NamedTuple, Optional, Parity
from .util import logger, IncompatibleDimensions, NonSquareComposite, ZeroVector
from .exactnum import SurdScalar, ZERO, ONE, INV_SQRT2
from .linalg import ExactVector, ExactMatrix, swap_matrix, stack_rank
from . import defaults

def coefficient_matrix(v: ExactVector, d1: int, d2: int) -> ExactMatrix:
	'''Reshape a composite vector into its d1 x d2 coefficient matrix, row index m1.'''
	if v.dim != d1*d2:
		raise IncompatibleDimensions(f"State of dimension {v.dim} is not {d1} x {d2}")
	return ExactMatrix(d1, d2, v.components, v.prefactor)

def schmidt_rank(v: ExactVector, d1: int, d2: int) -> int:
	'''Exact rank of the coefficient matrix; 1 means a product state.'''
	if v.is_zero():
		raise ZeroVector("The zero vector has no Schmidt decomposition")
	return coefficient_matrix(v, d1, d2).rank()

def jacobi_svd(a: np.ndarray, tol: float=defaults.JACOBI_TOLERANCE, max_sweeps: int=defaults.JACOBI_MAX_SWEEPS) -> np.ndarray:
	'''
	Singular values of a complex matrix, descending. One-sided Jacobi:
	rotate column pairs until they are mutually orthogonal, then read the
	singular values off the column norms.
	'''

	u = np.array(a, dtype=complex)
	if u.shape[0] < u.shape[1]:
		u = u.conj().T
	n = u.shape[1]

	for sweep in range(max_sweeps):
		rotated = False
		for p in range(n - 1):
			for q in range(p + 1, n):
				alpha = np.vdot(u[:, p], u[:, p]).real
				beta = np.vdot(u[:, q], u[:, q]).real
				gamma = np.vdot(u[:, p], u[:, q])
				g = abs(gamma)
				if g == 0 or g <= tol*np.sqrt(alpha*beta):
					continue
				rotated = True

				# Rephase column q so the pair overlap is real positive
				bq = u[:, q]*np.conj(gamma/g)
				zeta = (beta - alpha)/(2*g)
				t = (1.0 if zeta >= 0 else -1.0)/(abs(zeta) + np.sqrt(1 + zeta*zeta))
				c = 1/np.sqrt(1 + t*t)
				s = c*t
				ap = u[:, p].copy()
				u[:, p] = c*ap - s*bq
				u[:, q] = s*ap + c*bq
		if not rotated:
			logger.debug(f"Jacobi SVD converged after {sweep} sweeps")
			break

	return np.sort(np.linalg.norm(u, axis=0))[::-1]

def exact_schmidt_coefficients(m: ExactMatrix) -> Optional[tuple[SurdScalar, ...]]:
	'''
	Nonzero Schmidt coefficients as exact surds, descending, when M M^dagger
	or M^dagger M is diagonal; None otherwise.
	'''

	for gram in (m@m.adjoint(), m.adjoint()@m):
		n = gram.rows
		if any(gram[i, j] for i in range(n) for j in range(n) if i != j):
			continue
		diag = [gram.entry(i, i).as_surd().coeff for i in range(n)]
		return tuple(sorted((SurdScalar(1, d) for d in diag if d), reverse=True))
	return None

class SchmidtAnalysis(NamedTuple):
	'''Schmidt decomposition summary of a normalized two-particle state.'''

	rank: int
	'''Exact Schmidt rank.'''
	coefficients: tuple[float, ...]
	'''Leading `rank` singular values, descending; squares sum to 1.'''
	exact_coefficients: Optional[tuple[SurdScalar, ...]]
	'''The same coefficients exactly, when available.'''
	entropy: float
	'''Von Neumann entropy of either reduced state, in nats.'''
	is_product: bool
	numeric_rank: int
	'''Singular values above the relative threshold, for cross-checking.'''

def schmidt_analyze(v: ExactVector, d1: int, d2: int) -> SchmidtAnalysis:
	'''
	Schmidt rank, coefficients and entanglement entropy of v. The state is
	normalized first; the entropy of a product state is exactly 0.0.
	'''

	if v.is_zero():
		raise ZeroVector("The zero vector has no Schmidt decomposition")
	m = coefficient_matrix(v.normalized(), d1, d2)
	rank = m.rank()
	values = jacobi_svd(m.to_numpy())
	numeric_rank = int(np.sum(values > defaults.SVD_TOLERANCE*values[0]))
	if numeric_rank != rank:
		logger.warning(f"Floating Schmidt rank {numeric_rank} differs from exact rank {rank}")

	coefficients = values[:rank]
	if rank == 1:
		entropy = 0.0
	else:
		p = coefficients**2
		entropy = float(-np.sum(p*np.log(p)))
	return SchmidtAnalysis(
		rank, tuple(float(c) for c in coefficients),
		exact_schmidt_coefficients(m), entropy, rank == 1, numeric_rank
	)

def exchange_parity(v: ExactVector, d: int) -> Parity:
	'''+1 if SWAP v = v, -1 if SWAP v = -v, None otherwise.'''

	if v.dim != d*d:
		raise NonSquareComposite(f"Dimension {v.dim} is not {d} x {d}")
	swapped = swap_matrix(d)@v
	if swapped == v:
		return 1
	if swapped == -v:
		return -1
	return None

class Classification(NamedTuple):
	'''Exchange and entanglement properties of one labelled state.'''

	label: str
	S: Fraction
	mu: Fraction
	exchange_parity: Parity
	schmidt_rank: int
	is_product: bool
	entropy: float

def classify_paper_states() -> list[Classification]:
	'''Classify the nine photon-pair coupled states S1..S6, A1..A3.'''

	from .ketlang import EvalContext, parse, evaluate
	from .catalog import PAIR_STATES

	ctx = EvalContext.of(1, 1)
	rows = []
	for state in PAIR_STATES:
		v = evaluate(parse(state.text), ctx)
		analysis = schmidt_analyze(v, 3, 3)
		rows.append(Classification(
			state.label, state.S, state.mu, exchange_parity(v, 3),
			analysis.rank, analysis.is_product, analysis.entropy
		))
	return rows

class PolarizationState(NamedTuple):
	'''Linear polarization of one photon as a Cartesian vector.'''

	label: str
	vector: ExactVector

POLARIZATIONS = {
	"H": PolarizationState("H", ExactVector((ONE, ZERO, ZERO))),
	"V": PolarizationState("V", ExactVector((ZERO, ONE, ZERO))),
}
'''Horizontal along x, vertical along y.'''

class BellState(NamedTuple):
	'''Polarization Bell state with its Sz-eigenbasis form and analysis.'''

	label: str
	cartesian: ExactVector
	standard: ExactVector
	schmidt_rank: int
	exchange_parity: Parity
	decomposition: list
	'''Nonzero coupled-basis amplitudes.'''

def polarization_pair(a: str, b: str) -> ExactVector:
	'''|a>|b> for polarization labels "H" and "V".'''
	return POLARIZATIONS[a].vector.kron(POLARIZATIONS[b].vector)

def bell_vectors() -> dict[str, ExactVector]:
	'''The four Bell states (HH +- VV)/sqrt(2), (HV +- VH)/sqrt(2) in Cartesian coordinates.'''
	hh, vv = polarization_pair("H", "H"), polarization_pair("V", "V")
	hv, vh = polarization_pair("H", "V"), polarization_pair("V", "H")
	r = INV_SQRT2
	return {
		"HH+VV": (hh + vv).scale(r),
		"HH-VV": (hh - vv).scale(r),
		"HV+VH": (hv + vh).scale(r),
		"HV-VH": (hv - vh).scale(r),
	}

def bell_states() -> list[BellState]:
	'''Bell states with Schmidt rank, parity and coupled-basis decomposition.'''

	from .coupling import ProductSpace, to_standard, expand_in_coupled_basis

	space = ProductSpace.of(1, 1, "cartesian")
	standard = space.in_basis("standard_m")
	states = []
	for label, v in bell_vectors().items():
		w = to_standard(space, v)
		amplitudes = [a for a in expand_in_coupled_basis(standard, w) if a.amplitude]
		states.append(BellState(
			label, v, w, schmidt_rank(v, 3, 3), exchange_parity(v, 3), amplitudes
		))
	return states

def bell_span_dimension() -> int:
	'''Dimension of the span of the four Bell states.'''
	return stack_rank(list(bell_vectors().values()))
