'''
Single-particle spin operators in the Sz eigenbasis and, for spin 1, in the
Cartesian polarization basis, together with the exact unitary connecting
the two.
'''

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import defaults
from .typings import NamedTuple, Callable, Check, RationalLike, BasisLabel
from .util import (
	logger, parse_halfint, DomainError, UnsupportedSpin, LabelOutOfRange,
	IncompatibleDimensions
)
from .exactnum import (
	GaussianRational, SurdScalar, ComplexSurd, ZERO, ONE, I, INV_SQRT2,
	rational_text, exact
)
from .linalg import ExactVector, ExactMatrix, commutator

class SpinJ(NamedTuple):
	'''Spin quantum number stored as 2j.'''

	twice: int

	@classmethod
	def of(cls, j: 'RationalLike|SpinJ') -> 'SpinJ':
		if isinstance(j, SpinJ):
			return j
		value = parse_halfint(j)
		if value < 0:
			raise DomainError(f"Spin must be nonnegative, got {j!r}")
		return cls(int(2*value))

	@property
	def j(self) -> Fraction:
		return Fraction(self.twice, 2)

	@property
	def dim(self) -> int:
		return self.twice + 1

	def m_values(self) -> list[Fraction]:
		'''Admissible m, descending from j to -j.'''
		return [self.j - k for k in range(self.dim)]

	def index(self, m: RationalLike) -> int:
		'''Position of m in the descending basis order.'''
		m = Fraction(m)
		k = self.j - m
		if k.denominator != 1 or not 0 <= k < self.dim:
			raise LabelOutOfRange(f"m = {rational_text(m)} is not admissible for j = {self}")
		return int(k)

	def casimir_value(self) -> Fraction:
		'''j(j+1).'''
		return self.j*(self.j + 1)

	def __str__(self):
		return rational_text(self.j)

class SpinOperatorSet(NamedTuple):
	'''Hermitian generators sx, sy, sz of one particle in a named basis.'''

	j: SpinJ
	basis: BasisLabel
	sx: ExactMatrix
	sy: ExactMatrix
	sz: ExactMatrix

	@property
	def dim(self) -> int:
		return self.j.dim

	def components(self) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
		return self.sx, self.sy, self.sz

	def casimir(self) -> ExactMatrix:
		'''s^2 = sx^2 + sy^2 + sz^2.'''
		return self.sx@self.sx + self.sy@self.sy + self.sz@self.sz

	def raising(self) -> ExactMatrix:
		return self.sx + self.sy.scale(I)

	def lowering(self) -> ExactMatrix:
		return self.sx - self.sy.scale(I)

	def check_algebra(self) -> list[Check]:
		'''Hermiticity, cyclic commutators and the Casimir value.'''

		sx, sy, sz = self.components()
		checks = [
			Check(f"{name} hermitian", op.is_hermitian())
			for name, op in (("sx", sx), ("sy", sy), ("sz", sz))
		]
		for name, a, b, c in (
			("[sx, sy] = i sz", sx, sy, sz),
			("[sy, sz] = i sx", sy, sz, sx),
			("[sz, sx] = i sy", sz, sx, sy)
		):
			checks.append(Check(name, commutator(a, b) == c.scale(I)))
		jj = self.j.casimir_value()
		checks.append(Check(
			f"s^2 = {rational_text(jj)} I",
			self.casimir() == ExactMatrix.identity(self.dim).scale(jj)
		))
		return checks

OPERATOR_BUILDERS: dict[str, Callable[[SpinJ], SpinOperatorSet]] = {}
'''Builders of operator sets by basis label.'''

def basis_builder(label: str):
	'''Register a builder for the operator set of a basis.'''
	def decorator(fn):
		OPERATOR_BUILDERS[label] = fn
		return fn
	return decorator

def operator_set(j: 'RationalLike|SpinJ', basis: BasisLabel="standard_m") -> SpinOperatorSet:
	'''Operator set for spin j in the named basis.'''
	try:
		builder = OPERATOR_BUILDERS[basis]
	except KeyError:
		raise DomainError(f"Unknown basis {basis!r}") from None
	return builder(SpinJ.of(j))

@basis_builder("standard_m")
@lru_cache
def standard_spin(j: 'RationalLike|SpinJ') -> SpinOperatorSet:
	'''
	Generators in the Sz eigenbasis, m descending, Condon-Shortley phases.
	Raises UnsupportedSpin when the ladder matrix elements do not share one
	square root, which leaves j in {0, 1/2, 1}.
	'''

	j = SpinJ.of(j)
	n = j.dim
	ms = j.m_values()
	jj = j.casimir_value()

	# <m+1|s+|m> for every m below the top
	ladder = [SurdScalar(1, jj - m*(m + 1)) for m in ms[1:]]
	radicands = {s.radicand for s in ladder}
	if len(radicands) > 1:
		raise UnsupportedSpin(
			f"Spin {j} ladder elements {', '.join(map(str, ladder))} "
			"do not share a square root; the exact path covers j in {0, 1/2, 1}"
		)
	root = SurdScalar(1, radicands.pop() if radicands else 1)

	plus = [[ZERO]*n for _ in range(n)]
	for k in range(1, n):
		plus[k - 1][k] = GaussianRational(ladder[k - 1].coeff)

	half = Fraction(1, 2)
	minus_half_i = GaussianRational(0, -half)
	sx = [[(plus[a][b] + plus[b][a])*half for b in range(n)] for a in range(n)]
	sy = [[(plus[a][b] - plus[b][a])*minus_half_i for b in range(n)] for a in range(n)]

	return SpinOperatorSet(
		j, "standard_m",
		ExactMatrix.from_rows(sx, root),
		ExactMatrix.from_rows(sy, root),
		ExactMatrix.diagonal(ms)
	)

class FloatSpinOperators(NamedTuple):
	'''Generators of spin j as read-only complex arrays, m descending.'''

	j: SpinJ
	sx: np.ndarray
	sy: np.ndarray
	sz: np.ndarray

	@property
	def dim(self) -> int:
		return self.j.dim

	def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
		return self.sx, self.sy, self.sz

	def casimir(self) -> np.ndarray:
		return self.sx@self.sx + self.sy@self.sy + self.sz@self.sz

	def check_algebra(self, tol: float=defaults.FLOAT_TOLERANCE) -> list[Check]:
		'''The exact identity checks, each within `tol` in the max norm.'''

		def close(a, b):
			return bool(np.max(np.abs(a - b), initial=0.0) <= tol)

		sx, sy, sz = self.components()
		checks = [Check(f"{name} hermitian", close(op, op.conj().T)) for name, op in (("sx", sx), ("sy", sy), ("sz", sz))]
		for name, a, b, c in (
			("[sx, sy] = i sz", sx, sy, sz),
			("[sy, sz] = i sx", sy, sz, sx),
			("[sz, sx] = i sy", sz, sx, sy)
		):
			checks.append(Check(name, close(a@b - b@a, 1j*c)))
		jj = float(self.j.casimir_value())
		checks.append(Check(f"s^2 = {rational_text(self.j.casimir_value())} I", close(self.casimir(), jj*np.eye(self.dim))))
		return checks

@lru_cache
def float_spin(j: 'RationalLike|SpinJ') -> FloatSpinOperators:
	'''Double-precision generators for any j, Condon-Shortley phases.'''

	j = SpinJ.of(j)
	ms = np.array([float(m) for m in j.m_values()])
	jj = float(j.casimir_value())
	plus = np.diag(np.sqrt(jj - ms[1:]*(ms[1:] + 1)), k=1).astype(complex)
	sx = (plus + plus.T)/2
	sy = (plus - plus.T)/2j
	sz = np.diag(ms).astype(complex)
	for op in (sx, sy, sz):
		op.flags.writeable = False
	return FloatSpinOperators(j, sx, sy, sz)

@basis_builder("cartesian")
def cartesian_spin(j: 'RationalLike|SpinJ') -> SpinOperatorSet:
	if SpinJ.of(j) != SpinJ(2):
		raise UnsupportedSpin(f"The Cartesian basis exists for spin 1 only, got {SpinJ.of(j)}")
	return cartesian_spin1()

@lru_cache
def cartesian_spin1() -> SpinOperatorSet:
	'''Spin-1 generators (s_k)_{ab} = -i eps_{kab} on polarization axes x, y, z.'''

	i, _ = I, ZERO
	return SpinOperatorSet(
		SpinJ(2), "cartesian",
		ExactMatrix.from_rows([[_, _, _], [_, _, -i], [_, i, _]]),
		ExactMatrix.from_rows([[_, _, i], [_, _, _], [-i, _, _]]),
		ExactMatrix.from_rows([[_, -i, _], [i, _, _], [_, _, _]])
	)

@lru_cache
def cartesian_eigenbasis() -> tuple[ExactVector, ExactVector, ExactVector]:
	'''
	Polarization vectors with sz eigenvalues 1, 0, -1 in the photon phase
	convention: chi(1) = -(x + iy)/sqrt(2), chi(0) = z,
	chi(-1) = (x - iy)/sqrt(2).
	'''
	return (
		ExactVector((ONE, I, ZERO), -INV_SQRT2),
		ExactVector((ZERO, ZERO, ONE)),
		ExactVector((ONE, -I, ZERO), INV_SQRT2)
	)

def photon_ket(m: RationalLike) -> ExactVector:
	'''Cartesian chi(m) for m in {1, 0, -1}.'''
	return cartesian_eigenbasis()[SpinJ(2).index(m)]

def apply(op: ExactMatrix, v: ExactVector) -> ExactVector:
	'''Exact op|v>; IncompatibleDimensions on a shape mismatch.'''
	return op.apply(v)

def ladder_states(ops: SpinOperatorSet) -> list[ExactVector]:
	'''
	The |j, m> states, m descending, in the coordinates of `ops`. Lower
	states follow from the top one by s-|j,m> = sqrt(j(j+1) - m(m-1))|j,m-1>.
	'''

	j = ops.j
	if ops.basis == "cartesian":
		state = cartesian_eigenbasis()[0]
	else:
		top = ops.sz.shift(j.j).nullspace()
		if len(top) != 1:
			raise ArithmeticError(f"sz has a {len(top)}-dimensional top eigenspace")
		state = top[0].canonical()

	lower = ops.lowering()
	states = [state]
	jj = j.casimir_value()
	for m in j.m_values()[:-1]:
		state = (lower@state).scale(SurdScalar(1, jj - m*(m - 1)).inverse())
		states.append(state)
	return states

@dataclass(frozen=True)
class BasisChange:
	'''
	Unitary U whose columns are the target basis vectors written in source
	coordinates, so that U^dagger A_source U = A_target. Columns are kept
	as separate vectors because their surd prefactors generally differ.
	'''

	columns: tuple[ExactVector, ...]
	source: str
	target: str

	@property
	def dim(self) -> int:
		return len(self.columns)

	def _check(self, dim: int):
		if dim != self.dim:
			raise IncompatibleDimensions(f"Basis change of dimension {self.dim} applied to dimension {dim}")

	def conjugate(self, op: ExactMatrix) -> ExactMatrix:
		'''U^dagger op U.'''
		self._check(op.rows)
		images = [op@u for u in self.columns]
		return ExactMatrix.from_scalars([[u.inner(w) for w in images] for u in self.columns])

	def gram(self) -> ExactMatrix:
		'''U^dagger U.'''
		return ExactMatrix.from_scalars([[u.inner(w) for w in self.columns] for u in self.columns])

	def is_unitary(self) -> bool:
		return self.gram() == ExactMatrix.identity(self.dim)

	def to_target(self, v: ExactVector) -> ExactVector:
		'''Coordinates of a source-basis vector in the target basis, U^dagger v.'''
		self._check(v.dim)
		return ExactVector.from_scalars(u.inner(v) for u in self.columns)

	def from_target(self, w: ExactVector) -> ExactVector:
		'''Source-basis vector with target coordinates w, U w.'''
		self._check(w.dim)
		coords = [(w.value(k), u) for k, u in enumerate(self.columns) if w.components[k]]
		return ExactVector.from_scalars(
			sum((c*u.value(i) for c, u in coords), ComplexSurd())
			for i in range(self.dim)
		)

	def tensor(self, other: 'BasisChange') -> 'BasisChange':
		'''U (x) V on the product space.'''
		return BasisChange(
			tuple(a.kron(b) for a in self.columns for b in other.columns),
			f"{self.source}*{other.source}", f"{self.target}*{other.target}"
		)

	def matrix(self) -> ExactMatrix:
		'''U as one matrix; MixedRadicand when the columns do not share a prefactor.'''
		return ExactMatrix.from_columns(self.columns)

def basis_change(source: SpinOperatorSet, target: SpinOperatorSet) -> BasisChange:
	'''
	Exact unitary from `source` coordinates to `target` coordinates, built
	from the ladder states of both sides. With a Sz eigenbasis target the
	columns are the ladder states of the source.
	'''

	if source.j != target.j:
		raise IncompatibleDimensions(f"Spins {source.j} and {target.j} differ")

	ws = ladder_states(source)
	wt = ladder_states(target)
	n = source.dim
	columns = []
	for j in range(n):
		weights = [(wt[k].value(j).conjugate(), ws[k]) for k in range(n) if wt[k].components[j]]
		columns.append(ExactVector.from_scalars(
			sum((c*w.value(i) for c, w in weights), ComplexSurd())
			for i in range(n)
		))
	logger.debug(f"Built basis change {source.basis} -> {target.basis} for j = {source.j}")
	return BasisChange(tuple(columns), source.basis, target.basis)

@lru_cache
def photon_basis_change() -> BasisChange:
	'''Cartesian to Sz eigenbasis for one spin-1 particle; columns are chi(1), chi(0), chi(-1).'''
	return basis_change(cartesian_spin1(), standard_spin(SpinJ(2)))

def verify_single_photon_actions() -> list[Check]:
	'''The nine actions of sx, sy, sz on the Cartesian chi(m).'''

	ops = cartesian_spin1()
	chi_p, chi_0, chi_m = cartesian_eigenbasis()
	r = exact(INV_SQRT2)
	ir = exact(I)*r
	zero = ExactVector.zeros(3)

	cases = [
		("sx chi(0) = (chi(1) + chi(-1))/sqrt(2)", ops.sx, chi_0, (chi_p + chi_m).scale(r)),
		("sx chi(1) = chi(0)/sqrt(2)", ops.sx, chi_p, chi_0.scale(r)),
		("sx chi(-1) = chi(0)/sqrt(2)", ops.sx, chi_m, chi_0.scale(r)),
		("sy chi(0) = -i (chi(1) - chi(-1))/sqrt(2)", ops.sy, chi_0, (chi_p - chi_m).scale(-ir)),
		("sy chi(1) = i chi(0)/sqrt(2)", ops.sy, chi_p, chi_0.scale(ir)),
		("sy chi(-1) = -i chi(0)/sqrt(2)", ops.sy, chi_m, chi_0.scale(-ir)),
		("sz chi(0) = 0", ops.sz, chi_0, zero),
		("sz chi(1) = chi(1)", ops.sz, chi_p, chi_p),
		("sz chi(-1) = -chi(-1)", ops.sz, chi_m, -chi_m),
	]
	checks = []
	for name, op, v, expected in cases:
		got = op@v
		checks.append(Check(name, got == expected, "" if got == expected else f"got {got.values()}"))
	return checks

def verify_photon_operators() -> list[Check]:
	'''
	Cartesian spin-1 layer: algebra, s^2 = 2 on every chi(m), the sz
	eigenvalues, unitarity of the basis change and agreement of the
	conjugated generators with the Sz eigenbasis ones.
	'''

	ops = cartesian_spin1()
	checks = ops.check_algebra()
	s2 = ops.casimir()
	for m, chi in zip((1, 0, -1), cartesian_eigenbasis()):
		checks.append(Check(f"s^2 chi({m}) = 2 chi({m})", s2@chi == chi.scale(2)))
		checks.append(Check(f"sz chi({m}) = {m} chi({m})", ops.sz@chi == chi.scale(m)))
		checks.append(Check(f"<chi({m})|chi({m})> = 1", chi.is_normalized()))

	u = photon_basis_change()
	checks.append(Check("U^dagger U = I", u.is_unitary()))
	std = standard_spin(SpinJ(2))
	for name, a, b in zip(("sx", "sy", "sz"), ops.components(), std.components()):
		checks.append(Check(f"U^dagger {name} U = standard {name}", u.conjugate(a) == b))
	return checks
