'''
Coupling of two spins: total operators on the product space, the exact
coupled eigenbasis, eigenstate verification, the superposition ansatz and
Clebsch-Gordan coefficients as an independent cross-check.

Composite index k = k1*d2 + k2 where k1, k2 index m descending, so the
product basis runs m1 descending and, within each m1, m2 descending.
'''

from fractions import Fraction
from functools import lru_cache
import math

import numpy as np

from . import defaults
from .typings import NamedTuple, Sequence, Iterable, BasisLabel, RationalLike, Parity
from .util import (
	logger, parse_halfint, DomainError, UnsupportedSpin, MixedRadicand,
	IncompatibleDimensions, NoSolution, ZeroVector
)
from .exactnum import SurdScalar, ComplexSurd, ONE_SURD, to_float
from .linalg import ExactVector, ExactMatrix, commutator, gram_schmidt
from .spinops import (
	SpinJ, SpinOperatorSet, BasisChange, operator_set, float_spin, photon_ket,
	photon_basis_change
)
from .entangle import exchange_parity

class ProductSpace(NamedTuple):
	'''Two spins with a shared single-particle basis label.'''

	j1: SpinJ
	j2: SpinJ
	basis: BasisLabel = "standard_m"

	@classmethod
	def of(cls, j1: 'RationalLike|SpinJ', j2: 'RationalLike|SpinJ', basis: BasisLabel="standard_m") -> 'ProductSpace':
		return cls(SpinJ.of(j1), SpinJ.of(j2), basis)

	@property
	def d1(self) -> int:
		return self.j1.dim

	@property
	def d2(self) -> int:
		return self.j2.dim

	@property
	def dim(self) -> int:
		return self.d1*self.d2

	def index(self, m1: RationalLike, m2: RationalLike) -> int:
		return self.j1.index(m1)*self.d2 + self.j2.index(m2)

	def labels(self) -> list[tuple[Fraction, Fraction]]:
		'''(m1, m2) for each composite index.'''
		return [(m1, m2) for m1 in self.j1.m_values() for m2 in self.j2.m_values()]

	def admissible_S(self) -> list[Fraction]:
		'''Total spins j1 + j2 down to |j1 - j2|.'''
		a, b = self.j1.j, self.j2.j
		return [a + b - k for k in range(int(a + b - abs(a - b)) + 1)]

	def in_basis(self, basis: BasisLabel) -> 'ProductSpace':
		return self._replace(basis=basis)

	def factor_sets(self) -> tuple[SpinOperatorSet, SpinOperatorSet]:
		return operator_set(self.j1, self.basis), operator_set(self.j2, self.basis)

	def basis_change(self) -> BasisChange:
		'''Cartesian to Sz eigenbasis on both particles; spin 1 only.'''
		if self.j1 != SpinJ(2) or self.j2 != SpinJ(2):
			raise UnsupportedSpin(f"Cartesian product basis needs j1 = j2 = 1, got {self.j1}, {self.j2}")
		u = photon_basis_change()
		return u.tensor(u)

	def product_state(self, m1: RationalLike, m2: RationalLike) -> ExactVector:
		'''|m1>|m2> in this space's basis.'''
		if self.basis == "cartesian":
			return photon_ket(m1).kron(photon_ket(m2))
		return ExactVector.basis(self.dim, self.index(m1, m2))

def to_standard(space: ProductSpace, v: ExactVector) -> ExactVector:
	'''Sz-eigenbasis coordinates of a vector given in `space`'s basis.'''
	if space.basis == "standard_m":
		return v
	return space.basis_change().to_target(v)

def to_cartesian(space: ProductSpace, v: ExactVector) -> ExactVector:
	'''Cartesian coordinates of a vector given in `space`'s basis.'''
	if space.basis == "cartesian":
		return v
	return space.basis_change().from_target(v)

class TotalSpinOperators(NamedTuple):
	'''Total spin operators on a product space.'''

	space: ProductSpace
	sx: ExactMatrix
	sy: ExactMatrix
	sz: ExactMatrix
	s2: ExactMatrix

	def commute(self) -> bool:
		'''[S^2, Sz] = 0.'''
		return commutator(self.s2, self.sz).is_zero()

	def is_hermitian(self) -> bool:
		return self.s2.is_hermitian() and self.sz.is_hermitian()

def total_operators(space: ProductSpace, float_fallback: bool=False) -> 'TotalSpinOperators|FloatTotalSpinOperators':
	'''
	S_k = s_k (x) 1 + 1 (x) s_k and
	S^2 = s1^2 (x) 1 + 1 (x) s2^2 + 2 sum_k s_k (x) s_k.
	Raises UnsupportedSpin when S^2 leaves the exact scalar set, unless
	`float_fallback` asks for the double-precision operators instead.
	'''

	try:
		return _exact_total_operators(space)
	except UnsupportedSpin as e:
		if not float_fallback:
			raise
		logger.info(f"{e}; coupling in double precision")
		return float_total_operators(space)

def _exact_total_operators(space: ProductSpace) -> TotalSpinOperators:
	s1, s2 = space.factor_sets()
	i1, i2 = ExactMatrix.identity(space.d1), ExactMatrix.identity(space.d2)
	try:
		sx, sy, sz = (a.kron(i2) + i1.kron(b) for a, b in zip(s1.components(), s2.components()))
		cross = [a.kron(b) for a, b in zip(s1.components(), s2.components())]
		s_sq = (
			s1.casimir().kron(i2) + i1.kron(s2.casimir())
			+ (cross[0] + cross[1] + cross[2]).scale(2)
		)
	except MixedRadicand as e:
		raise UnsupportedSpin(
			f"Coupling j1 = {space.j1} with j2 = {space.j2} needs mixed square roots; "
			"the exact path covers j1 = j2 in {0, 1/2, 1} or a spin-0 factor"
		) from e
	if s_sq.prefactor != ONE_SURD or sz.prefactor != ONE_SURD:
		raise UnsupportedSpin(f"S^2 for j1 = {space.j1}, j2 = {space.j2} is not rational")
	return TotalSpinOperators(space, sx, sy, sz, s_sq)

class FloatTotalSpinOperators(NamedTuple):
	'''Total spin operators as complex arrays, Sz eigenbasis only.'''

	space: ProductSpace
	sx: np.ndarray
	sy: np.ndarray
	sz: np.ndarray
	s2: np.ndarray

	def commute(self, tol: float=defaults.FLOAT_TOLERANCE) -> bool:
		return bool(np.max(np.abs(self.s2@self.sz - self.sz@self.s2)) <= tol)

	def is_hermitian(self, tol: float=defaults.FLOAT_TOLERANCE) -> bool:
		return all(np.max(np.abs(op - op.conj().T)) <= tol for op in (self.s2, self.sz))

def float_total_operators(space: ProductSpace) -> FloatTotalSpinOperators:
	'''Double-precision total operators for any j1, j2 in the Sz eigenbasis.'''

	if space.basis != "standard_m":
		raise UnsupportedSpin(f"Double-precision coupling works in the Sz eigenbasis only, got {space.basis}")
	a, b = float_spin(space.j1), float_spin(space.j2)
	i1, i2 = np.eye(space.d1), np.eye(space.d2)
	sx, sy, sz = (np.kron(p, i2) + np.kron(i1, q) for p, q in zip(a.components(), b.components()))
	s2 = sx@sx + sy@sy + sz@sz
	return FloatTotalSpinOperators(space, sx, sy, sz, s2)

def eigenspace_mu(ops: TotalSpinOperators, mu: RationalLike) -> list[ExactVector]:
	'''Basis of the Sz = mu eigenspace; empty when mu is not an eigenvalue.'''
	return ops.sz.shift(Fraction(mu)).nullspace()

class EigenvalueRow(NamedTuple):
	'''One total spin S with S(S+1) and the dimension of its eigenspace.'''

	S: Fraction
	eigenvalue: Fraction
	multiplicity: int

def eigenvalue_table(ops: 'TotalSpinOperators|FloatTotalSpinOperators') -> list[EigenvalueRow]:
	'''
	S^2 eigenvalues with multiplicities from exact ranks, or from counting
	eigenvalues within `defaults.FLOAT_TOLERANCE` for float operators. The
	multiplicities sum to the dimension.
	'''

	if isinstance(ops, FloatTotalSpinOperators):
		found = np.linalg.eigvalsh(ops.s2)
		return [
			EigenvalueRow(S, S*(S + 1), int(np.sum(np.abs(found - float(S*(S + 1))) <= defaults.FLOAT_TOLERANCE)))
			for S in ops.space.admissible_S()
		]
	n = ops.space.dim
	rows = []
	for S in ops.space.admissible_S():
		lam = S*(S + 1)
		rows.append(EigenvalueRow(S, lam, n - ops.s2.shift(lam).rank()))
	return rows

class CoupledState(NamedTuple):
	'''Normalized simultaneous eigenvector of S^2 and Sz.'''

	S: Fraction
	mu: Fraction
	vector: ExactVector
	exchange_parity: Parity
	provenance: str = "eigensolver"

	@property
	def label(self) -> str:
		return f"|{self.S}, {self.mu}>"

@lru_cache
def _standard_eigenbasis(space: ProductSpace) -> tuple[CoupledState, ...]:
	ops = total_operators(space)
	mu_spaces: dict[Fraction, list[ExactVector]] = {}
	states = []
	for S in space.admissible_S():
		shifted = ops.s2.shift(S*(S + 1))
		for k in range(int(2*S) + 1):
			mu = S - k
			if mu not in mu_spaces:
				mu_spaces[mu] = eigenspace_mu(ops, mu)
			basis = mu_spaces[mu]
			coeffs = ExactMatrix.from_columns([shifted@b for b in basis]).nullspace()
			if not coeffs:
				raise NoSolution(f"No |{S}, {mu}> eigenvector for j1 = {space.j1}, j2 = {space.j2}")
			embed = ExactMatrix.from_columns(basis)
			for vector in gram_schmidt(embed@c for c in coeffs):
				vector = vector.canonical()
				parity = exchange_parity(vector, space.d1) if space.d1 == space.d2 else None
				states.append(CoupledState(S, mu, vector, parity))
	logger.debug(f"Coupled eigenbasis for j1 = {space.j1}, j2 = {space.j2}: {len(states)} states")
	return tuple(states)

def coupled_eigenbasis(space: ProductSpace, float_fallback: bool=False) -> 'list[CoupledState]|list[FloatCoupledState]':
	'''
	Orthonormal basis of simultaneous S^2, Sz eigenvectors ordered by S
	descending then mu descending. Each state is solved in the Sz eigenbasis
	inside its mu eigenspace and phased so the component with the largest
	m1 is real positive, which matches the Condon-Shortley convention for
	the supported spins. Cartesian spaces get the same states transformed.
	With `float_fallback` spins outside the exact set get the
	double-precision basis of `float_coupled_eigenbasis`.
	'''

	try:
		states = _standard_eigenbasis(space.in_basis("standard_m"))
	except UnsupportedSpin:
		if not float_fallback:
			raise
		return float_coupled_eigenbasis(space)
	if space.basis == "standard_m":
		return list(states)
	change = space.basis_change()
	return [s._replace(vector=change.from_target(s.vector)) for s in states]

class FloatCoupledState(NamedTuple):
	'''Unit eigenvector of S^2 and Sz found in double precision.'''

	S: Fraction
	mu: Fraction
	vector: np.ndarray
	exchange_parity: Parity
	provenance: str = "float"

	@property
	def label(self) -> str:
		return f"|{self.S}, {self.mu}>"

def _float_parity(v: np.ndarray, d: int, tol: float) -> Parity:
	m = v.reshape(d, d)
	if np.allclose(m, m.T, atol=tol):
		return 1
	if np.allclose(m, -m.T, atol=tol):
		return -1
	return None

def float_coupled_eigenbasis(space: ProductSpace, tol: float=defaults.FLOAT_TOLERANCE) -> list[FloatCoupledState]:
	'''
	Coupled basis for any j1, j2 by diagonalizing S^2 inside each Sz block.
	Same order as the exact basis; each vector has unit norm and its first
	component above `tol` real positive.
	'''

	ops = float_total_operators(space)
	mz = np.diag(ops.sz).real
	states = []
	for S in space.admissible_S():
		target = float(S*(S + 1))
		for k in range(int(2*S) + 1):
			mu = S - k
			block = np.flatnonzero(np.abs(mz - float(mu)) <= tol)
			values, vectors = np.linalg.eigh(ops.s2[np.ix_(block, block)])
			picked = np.flatnonzero(np.abs(values - target) <= tol)
			if not len(picked):
				raise NoSolution(f"No |{S}, {mu}> eigenvector for j1 = {space.j1}, j2 = {space.j2}")
			for col in picked:
				v = np.zeros(space.dim, dtype=complex)
				v[block] = vectors[:, col]
				lead = v[np.flatnonzero(np.abs(v) > tol)[0]]
				v *= abs(lead)/lead
				v /= np.linalg.norm(v)
				parity = _float_parity(v, space.d1, tol) if space.d1 == space.d2 else None
				states.append(FloatCoupledState(S, mu, v, parity))
	logger.debug(f"Double-precision coupled basis for j1 = {space.j1}, j2 = {space.j2}: {len(states)} states")
	return states

def cg_vector(space: ProductSpace, S: RationalLike, mu: RationalLike) -> np.ndarray:
	'''Clebsch-Gordan column for |S, mu> in double precision, Sz eigenbasis.'''
	a, b = space.j1.j, space.j2.j
	S, mu = parse_halfint(S), parse_halfint(mu)
	return np.array([
		to_float(clebsch_gordan(a, m1, b, m2, S, mu).value) if m1 + m2 == mu else 0j
		for m1, m2 in space.labels()
	])

class EigenVerdict(NamedTuple):
	'''Result of checking S^2 v = S(S+1) v and Sz v = mu v.'''

	passed: bool
	s2_residual: ExactVector
	sz_residual: ExactVector
	S: Fraction
	mu: Fraction

def verify_eigenstate(ops: 'TotalSpinOperators|FloatTotalSpinOperators', v: 'ExactVector|np.ndarray', S: RationalLike, mu: RationalLike) -> 'EigenVerdict|FloatEigenVerdict':
	'''
	PASS iff both residuals are exactly zero. Float operators give a
	FloatEigenVerdict that passes when both residual norms are within
	`defaults.FLOAT_TOLERANCE`.
	'''

	if isinstance(ops, FloatTotalSpinOperators):
		return _verify_float(ops, v, S, mu)
	if v.dim != ops.space.dim:
		raise IncompatibleDimensions(f"State of dimension {v.dim} in a {ops.space.dim}-dimensional space")
	S, mu = parse_halfint(S), parse_halfint(mu)
	r2 = ops.s2@v - v.scale(S*(S + 1))
	rz = ops.sz@v - v.scale(mu)
	return EigenVerdict(r2.is_zero() and rz.is_zero(), r2, rz, S, mu)

class FloatEigenVerdict(NamedTuple):
	'''Residual norms of S^2 v = S(S+1) v and Sz v = mu v in double precision.'''

	passed: bool
	s2_residual: float
	sz_residual: float
	S: Fraction
	mu: Fraction

def _verify_float(ops: FloatTotalSpinOperators, v: 'ExactVector|np.ndarray', S: RationalLike, mu: RationalLike) -> FloatEigenVerdict:
	x = v.to_numpy() if isinstance(v, ExactVector) else np.asarray(v, dtype=complex)
	if x.shape != (ops.space.dim,):
		raise IncompatibleDimensions(f"State of dimension {x.size} in a {ops.space.dim}-dimensional space")
	S, mu = parse_halfint(S), parse_halfint(mu)
	r2 = float(np.linalg.norm(ops.s2@x - float(S*(S + 1))*x))
	rz = float(np.linalg.norm(ops.sz@x - float(mu)*x))
	tol = defaults.FLOAT_TOLERANCE
	return FloatEigenVerdict(r2 <= tol and rz <= tol, r2, rz, S, mu)

class AnsatzSolution(NamedTuple):
	'''Normalized eigenstate sum_i a_i c_i over the given candidates.'''

	state: CoupledState
	coefficients: tuple[ComplexSurd, ...]

	def ratio(self, i: int=0, k: int=1) -> ComplexSurd:
		'''a_i / a_k.'''
		return self.coefficients[i]/self.coefficients[k]

def solve_superposition_ansatz(ops: TotalSpinOperators, candidates: Sequence[ExactVector], S: RationalLike, mu: RationalLike) -> AnsatzSolution:
	'''
	Find a_i with sum_i a_i c_i a normalized eigenstate of S^2 and Sz. The
	linear system is solved on the raw components of each candidate and the
	surd prefactors are divided back out, so a_i multiplies c_i as given.
	Raises NoSolution when no combination works or the combination is not
	unique up to scale.
	'''

	if not candidates:
		raise NoSolution("No candidates")
	for c in candidates:
		if c.dim != ops.space.dim:
			raise IncompatibleDimensions(f"Candidate of dimension {c.dim} in a {ops.space.dim}-dimensional space")
		if c.is_zero():
			raise ZeroVector("Zero candidate in ansatz")

	S, mu = parse_halfint(S), parse_halfint(mu)
	a = ops.s2.shift(S*(S + 1))
	b = ops.sz.shift(mu)
	raw = [ExactVector(c.components) for c in candidates]
	columns = [ExactVector((a@g).components + (b@g).components) for g in raw]
	solutions = ExactMatrix.from_columns(columns).nullspace()
	if not solutions:
		raise NoSolution(f"No combination of {len(candidates)} candidates is an eigenstate with S = {S}, mu = {mu}")
	if len(solutions) > 1:
		raise NoSolution(f"Coefficients are not determined: {len(solutions)}-dimensional solution space")

	y = solutions[0].components
	v = sum((g.scale(yi) for g, yi in zip(raw, y) if yi), ExactVector.zeros(ops.space.dim))
	kappa = v.phase_factor()
	coefficients = tuple(
		kappa*yi/c.prefactor
		for yi, c in zip(y, candidates)
	)
	state = v.canonical()
	parity = exchange_parity(state, ops.space.d1) if ops.space.d1 == ops.space.d2 else None
	return AnsatzSolution(CoupledState(S, mu, state, parity, "ansatz"), coefficients)

def _fact(n: int) -> int:
	return math.factorial(n)

@lru_cache(maxsize=65536)
def _cg_twice(t1: int, tm1: int, t2: int, tm2: int, tJ: int, tM: int) -> SurdScalar:
	'''Racah's closed form on doubled quantum numbers.'''

	zero = SurdScalar()
	if tm1 + tm2 != tM:
		return zero
	if abs(tm1) > t1 or abs(tm2) > t2 or abs(tM) > tJ:
		return zero
	if (t1 - tm1) % 2 or (t2 - tm2) % 2 or (tJ - tM) % 2:
		return zero
	if not abs(t1 - t2) <= tJ <= t1 + t2 or (t1 + t2 + tJ) % 2:
		return zero

	# Integer arguments of the factorials
	a = (t1 + t2 - tJ)//2
	b = (t1 - tm1)//2
	c = (t2 + tm2)//2
	d = (tJ - t2 + tm1)//2
	e = (tJ - t1 - tm2)//2

	norm = Fraction(
		(tJ + 1)*_fact((tJ + t1 - t2)//2)*_fact((tJ - t1 + t2)//2)*_fact(a),
		_fact((t1 + t2 + tJ)//2 + 1)
	)*(
		_fact((tJ + tM)//2)*_fact((tJ - tM)//2)
		*_fact(b)*_fact((t1 + tm1)//2)
		*_fact((t2 - tm2)//2)*_fact(c)
	)

	total = Fraction(0)
	for k in range(max(0, -d, -e), min(a, b, c) + 1):
		total += Fraction((-1)**k, _fact(k)*_fact(a - k)*_fact(b - k)*_fact(c - k)*_fact(d + k)*_fact(e + k))
	return SurdScalar(total, norm)

class CGCoefficient(NamedTuple):
	'''<j1 m1; j2 m2 | J M> with its labels.'''

	j1: Fraction
	m1: Fraction
	j2: Fraction
	m2: Fraction
	J: Fraction
	M: Fraction
	value: SurdScalar

	def __str__(self):
		return str(self.value)

def clebsch_gordan(j1: RationalLike, m1: RationalLike, j2: RationalLike, m2: RationalLike, J: RationalLike, M: RationalLike) -> CGCoefficient:
	'''
	Exact <j1 m1; j2 m2 | J M> in the Condon-Shortley convention. Selection
	rule violations give zero; negative or non-half-integer j raise
	DomainError.
	'''

	labels = tuple(parse_halfint(x) for x in (j1, m1, j2, m2, J, M))
	if min(labels[0], labels[2], labels[4]) < 0:
		raise DomainError(f"Negative angular momentum in ({j1}, {j2}, {J})")
	t1, tm1, t2, tm2, tJ, tM = (int(2*x) for x in labels)
	return CGCoefficient(*labels, _cg_twice(t1, tm1, t2, tm2, tJ, tM))

def cg_state(space: ProductSpace, S: RationalLike, mu: RationalLike) -> CoupledState:
	'''
	|S, mu> assembled from the Clebsch-Gordan table, in `space`'s basis.
	Raises UnsupportedSpin when the coefficients carry different square
	roots and DomainError when S or mu is not admissible.
	'''

	S, mu = parse_halfint(S), parse_halfint(mu)
	if S not in space.admissible_S() or abs(mu) > S or (S - mu).denominator != 1:
		raise DomainError(f"|{S}, {mu}> is not a state of j1 = {space.j1}, j2 = {space.j2}")
	a, b = space.j1.j, space.j2.j
	try:
		vector = ExactVector.from_scalars(
			clebsch_gordan(a, m1, b, m2, S, mu).value for m1, m2 in space.labels()
		)
	except MixedRadicand as e:
		raise UnsupportedSpin(f"|{S}, {mu}> for j1 = {space.j1}, j2 = {space.j2} mixes square roots") from e
	parity = exchange_parity(vector, space.d1) if space.d1 == space.d2 else None
	if space.basis == "cartesian":
		vector = space.basis_change().from_target(vector)
	return CoupledState(S, mu, vector, parity, "clebsch_gordan")

class CoupledAmplitude(NamedTuple):
	'''Amplitude of a state on one coupled basis vector.'''

	S: Fraction
	mu: Fraction
	amplitude: ComplexSurd
	approx: complex

def expand_in_coupled_basis(space: ProductSpace, v: ExactVector) -> list[CoupledAmplitude]:
	'''
	Amplitudes <S, mu|v> over the coupled basis. For a normalized v the
	squared magnitudes sum to exactly 1.
	'''

	if v.dim != space.dim:
		raise IncompatibleDimensions(f"State of dimension {v.dim} in a {space.dim}-dimensional space")
	amplitudes = []
	for state in coupled_eigenbasis(space):
		a = state.vector.inner(v)
		amplitudes.append(CoupledAmplitude(state.S, state.mu, a, a.to_complex()))
	return amplitudes

def total_probability(amplitudes: Iterable[CoupledAmplitude]) -> Fraction:
	return sum((a.amplitude.abs_squared() for a in amplitudes), Fraction(0))

class DualPathRow(NamedTuple):
	'''One nonzero component compared between the eigensolver and the CG table.'''

	S: Fraction
	mu: Fraction
	m1: Fraction
	m2: Fraction
	eigen: ComplexSurd
	cg: SurdScalar
	agrees: bool

class DualPathReport(NamedTuple):
	rows: list[DualPathRow]
	signs: dict[Fraction, int]
	'''Overall sign of each S multiplet relative to the CG table.'''
	passed: bool

def dual_path_check(space: ProductSpace) -> DualPathReport:
	'''
	Compare every component of the Sz-eigenbasis coupled states with the
	matching Clebsch-Gordan coefficient, allowing one overall sign per S.
	'''

	space = space.in_basis("standard_m")
	labels = space.labels()
	j1, j2 = space.j1.j, space.j2.j
	rows = []
	signs: dict[Fraction, int] = {}
	passed = True
	for state in coupled_eigenbasis(space):
		for k, (m1, m2) in enumerate(labels):
			eigen = state.vector.value(k)
			cg = clebsch_gordan(j1, m1, j2, m2, state.S, state.mu).value
			if not eigen and not cg:
				continue
			if state.S not in signs:
				signs[state.S] = 1 if eigen == cg else -1 if eigen == -cg else 0
			agrees = signs[state.S] != 0 and eigen == cg*signs[state.S]
			passed &= agrees
			rows.append(DualPathRow(state.S, state.mu, m1, m2, eigen, cg, agrees))
	return DualPathReport(rows, signs, passed)

class OrthonormalityReport(NamedTuple):
	exact: bool
	'''Whether every sum was evaluated exactly.'''
	max_deviation: float
	pairs_checked: int

def cg_orthonormality(j1: RationalLike, j2: RationalLike) -> OrthonormalityReport:
	'''
	Check sum_{m1,m2} <m1 m2|J M><m1 m2|J' M> = delta_{JJ'} and
	sum_{J,M} <m1 m2|J M><m1' m2'|J M> = delta over all labels. Sums fall
	back to floating point when their terms carry different square roots.
	'''

	space = ProductSpace.of(j1, j2)
	a, b = space.j1.j, space.j2.j
	Js = space.admissible_S()
	exact_all = True
	worst = 0.0
	pairs = 0

	def accumulate(terms: list[SurdScalar], expected: int):
		nonlocal exact_all, worst, pairs
		pairs += 1
		try:
			total = sum(terms, SurdScalar())
			deviation = abs((total - expected).to_float())
		except MixedRadicand:
			exact_all = False
			deviation = abs(sum(t.to_float() for t in terms) - expected)
		worst = max(worst, deviation)

	ms = space.labels()
	for J in Js:
		for Jp in Js:
			for k in range(int(2*min(J, Jp)) + 1):
				M = min(J, Jp) - k
				accumulate([
					clebsch_gordan(a, m1, b, m2, J, M).value*clebsch_gordan(a, m1, b, m2, Jp, M).value
					for m1, m2 in ms if m1 + m2 == M
				], int(J == Jp))

	coupled = [(J, J - k) for J in Js for k in range(int(2*J) + 1)]
	for x, (m1, m2) in enumerate(ms):
		for (n1, n2) in ms[x:]:
			if m1 + m2 != n1 + n2:
				continue
			accumulate([
				clebsch_gordan(a, m1, b, m2, J, M).value*clebsch_gordan(a, n1, b, n2, J, M).value
				for J, M in coupled if M == m1 + m2
			], int((m1, m2) == (n1, n2)))
	return OrthonormalityReport(exact_all, worst, pairs)
