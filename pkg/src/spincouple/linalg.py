'''
Exact vectors and matrices. Entries are Gaussian rationals sharing one real
surd prefactor, which is what every spin operator and coupled state of the
supported cases needs. Rank and null spaces come from fraction-free
elimination, never from floating point.
'''

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np

from .typings import Any, Iterable, Sequence
from .util import IncompatibleDimensions, MixedRadicand, ZeroVector
from .exactnum import (
	GaussianRational, SurdScalar, ComplexSurd, ZERO, ONE, ONE_SURD, exact
)

def _gauss(x: Any) -> GaussianRational:
	if (g := GaussianRational.of(x)) is None:
		raise TypeError(f"Expected a Gaussian rational entry, got {x!r}")
	return g

def _surd(x: Any) -> SurdScalar:
	if (s := SurdScalar.of(x)) is None:
		raise TypeError(f"Expected a real surd prefactor, got {x!r}")
	return s

def primitive(values: Sequence[GaussianRational]) -> tuple[Fraction, tuple[GaussianRational, ...]]:
	'''
	Split nonzero-containing values into r*z with r > 0 rational and z
	coprime Gaussian integers.
	'''

	parts = [p for g in values for p in (g.re, g.im) if p]
	if not parts:
		return Fraction(1), tuple(values)
	den = math.lcm(*(p.denominator for p in parts))
	num = math.gcd(*(int(p*den) for p in parts))
	r = Fraction(num, den)
	return r, tuple(GaussianRational(g.re/r, g.im/r) for g in values)

def _common_radicand(values: Iterable[ComplexSurd]) -> int:
	radicands = {z.radicand for z in values if z}
	if len(radicands) > 1:
		raise MixedRadicand(f"Values with radicands {sorted(radicands)} cannot share a prefactor")
	return radicands.pop() if radicands else 1

def _merge(p: SurdScalar, a: Sequence[GaussianRational], q: SurdScalar, b: Sequence[GaussianRational], sign: int):
	'''p*a + sign*q*b as (prefactor, entries).'''

	if p == q:
		return p, tuple(x + sign*y for x, y in zip(a, b))
	if not p or not any(a):
		return q, tuple(sign*y for y in b)
	if not q or not any(b):
		return p, tuple(a)
	if p.radicand != q.radicand:
		raise MixedRadicand(f"Cannot combine prefactors {p} and {q} exactly")
	return SurdScalar(1, p.radicand), tuple(
		x*p.coeff + sign*y*q.coeff for x, y in zip(a, b)
	)

@dataclass(frozen=True, eq=False)
class ExactVector:
	'''Column vector prefactor*components.'''

	components: tuple[GaussianRational, ...]
	prefactor: SurdScalar = ONE_SURD

	def __post_init__(self):
		object.__setattr__(self, "components", tuple(_gauss(c) for c in self.components))
		object.__setattr__(self, "prefactor", _surd(self.prefactor))

	@classmethod
	def zeros(cls, dim: int) -> 'ExactVector':
		return cls((ZERO,)*dim)

	@classmethod
	def basis(cls, dim: int, k: int) -> 'ExactVector':
		'''Unit vector e_k.'''
		if not 0 <= k < dim:
			raise IncompatibleDimensions(f"Basis index {k} outside dimension {dim}")
		return cls(tuple(ONE if i == k else ZERO for i in range(dim)))

	@classmethod
	def from_scalars(cls, values: Iterable[Any]) -> 'ExactVector':
		'''Vector of exact scalars; MixedRadicand unless they share a radicand.'''
		zs = [exact(v) for v in values]
		d = _common_radicand(zs)
		return cls(tuple(z.coeff for z in zs), SurdScalar(1, d))

	@property
	def dim(self) -> int:
		return len(self.components)

	def __len__(self):
		return len(self.components)

	def value(self, k: int) -> ComplexSurd:
		'''Exact k-th component including the prefactor.'''
		return self.prefactor*self.components[k]

	def values(self) -> list[ComplexSurd]:
		return [self.value(k) for k in range(self.dim)]

	def is_zero(self) -> bool:
		return not self.prefactor or not any(self.components)

	def _canonical(self):
		if self.is_zero():
			return 1, (ZERO,)*self.dim
		c = self.prefactor.coeff
		return self.prefactor.radicand, tuple(x*c for x in self.components)

	def __eq__(self, other):
		if not isinstance(other, ExactVector):
			return NotImplemented
		return self.dim == other.dim and self._canonical() == other._canonical()

	def __hash__(self):
		return hash(self._canonical())

	def _check(self, other: 'ExactVector'):
		if self.dim != other.dim:
			raise IncompatibleDimensions(f"Dimensions {self.dim} and {other.dim} differ")

	def __add__(self, other):
		if not isinstance(other, ExactVector):
			return NotImplemented
		self._check(other)
		p, c = _merge(self.prefactor, self.components, other.prefactor, other.components, 1)
		return ExactVector(c, p)

	def __sub__(self, other):
		if not isinstance(other, ExactVector):
			return NotImplemented
		self._check(other)
		p, c = _merge(self.prefactor, self.components, other.prefactor, other.components, -1)
		return ExactVector(c, p)

	def __neg__(self):
		return ExactVector(self.components, -self.prefactor)

	def scale(self, x: Any) -> 'ExactVector':
		'''Multiply by any exact scalar.'''

		z = exact(x)
		if z.coeff.im == 0:
			return ExactVector(self.components, self.prefactor*SurdScalar(z.coeff.re, z.radicand))
		return ExactVector(
			tuple(c*z.coeff for c in self.components),
			self.prefactor*SurdScalar(1, z.radicand)
		)

	def __mul__(self, other):
		if ComplexSurd.of(other) is None:
			return NotImplemented
		return self.scale(other)
	__rmul__ = __mul__

	def kron(self, other: 'ExactVector') -> 'ExactVector':
		'''Tensor product, first factor major.'''
		return ExactVector(
			tuple(a*b for a in self.components for b in other.components),
			self.prefactor*other.prefactor
		)

	def inner(self, other: 'ExactVector') -> ComplexSurd:
		'''<self|other>, antilinear in self.'''
		self._check(other)
		g = sum((a.conjugate()*b for a, b in zip(self.components, other.components)), ZERO)
		return (self.prefactor*other.prefactor)*g

	def raw_norm_squared(self) -> Fraction:
		'''Sum of |component|^2 ignoring the prefactor.'''
		return sum((c.abs_squared() for c in self.components), Fraction(0))

	def norm_squared(self) -> Fraction:
		return self.prefactor.square()*self.raw_norm_squared()

	def is_normalized(self) -> bool:
		return self.norm_squared() == 1

	def normalized(self) -> 'ExactVector':
		'''Same direction with unit norm; ZeroVector for the zero vector.'''
		if self.is_zero():
			raise ZeroVector("Cannot normalize the zero vector")
		sign = self.prefactor.sign()
		return ExactVector(self.components, SurdScalar(sign, 1/self.raw_norm_squared()))

	def _leading(self) -> GaussianRational:
		if self.is_zero():
			raise ZeroVector("The zero vector has no phase")
		return next(c for c in self.components if c)

	def phase_factor(self) -> ComplexSurd:
		'''
		Scalar k with k*self normalized and its first nonzero component real
		positive.
		'''
		first = self._leading()
		target = SurdScalar(1, 1/(first.abs_squared()*self.raw_norm_squared()))
		return exact(first.conjugate())*target/self.prefactor

	def canonical(self) -> 'ExactVector':
		'''Normalized with the first nonzero component real positive.'''
		first = self._leading()
		_, comps = primitive([c*first.conjugate() for c in self.components])
		v = ExactVector(comps)
		return ExactVector(comps, SurdScalar(1, 1/v.raw_norm_squared()))

	def primitive(self) -> 'ExactVector':
		'''Same value with coprime Gaussian integer components.'''
		if self.is_zero():
			return ExactVector.zeros(self.dim)
		r, comps = primitive(self.components)
		return ExactVector(comps, self.prefactor*r)

	def to_numpy(self) -> np.ndarray:
		return np.array([v.to_complex() for v in self.values()], dtype=complex)

@dataclass(frozen=True, eq=False)
class ExactMatrix:
	'''
	Matrix prefactor*entries, entries row-major. A rational prefactor is
	folded into the entries, so a nontrivial prefactor always carries a
	square root.
	'''

	rows: int
	cols: int
	entries: tuple[GaussianRational, ...]
	prefactor: SurdScalar = ONE_SURD

	def __post_init__(self):
		entries = tuple(_gauss(e) for e in self.entries)
		if len(entries) != self.rows*self.cols:
			raise IncompatibleDimensions(
				f"{len(entries)} entries do not fill a {self.rows}x{self.cols} matrix"
			)
		prefactor = _surd(self.prefactor)
		if prefactor.radicand == 1:
			if prefactor.coeff != 1:
				entries = tuple(e*prefactor.coeff for e in entries)
			prefactor = ONE_SURD
		object.__setattr__(self, "entries", entries)
		object.__setattr__(self, "prefactor", prefactor)

	@classmethod
	def from_rows(cls, rows: Sequence[Sequence[Any]], prefactor: Any=ONE_SURD) -> 'ExactMatrix':
		rows = [list(r) for r in rows]
		ncols = len(rows[0]) if rows else 0
		if any(len(r) != ncols for r in rows):
			raise IncompatibleDimensions("Ragged matrix rows")
		return cls(len(rows), ncols, tuple(e for r in rows for e in r), _surd(prefactor))

	@classmethod
	def from_scalars(cls, rows: Sequence[Sequence[Any]]) -> 'ExactMatrix':
		'''Matrix of exact scalars; MixedRadicand unless they share a radicand.'''
		zs = [[exact(v) for v in r] for r in rows]
		d = _common_radicand(z for r in zs for z in r)
		return cls.from_rows([[z.coeff for z in r] for r in zs], SurdScalar(1, d))

	@classmethod
	def from_columns(cls, columns: Sequence[ExactVector]) -> 'ExactMatrix':
		if not columns:
			return cls(0, 0, ())
		n = columns[0].dim
		return cls.from_scalars([[c.value(i) for c in columns] for i in range(n)])

	@classmethod
	def identity(cls, n: int) -> 'ExactMatrix':
		return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

	@classmethod
	def zeros(cls, rows: int, cols: int) -> 'ExactMatrix':
		return cls(rows, cols, (ZERO,)*(rows*cols))

	@classmethod
	def diagonal(cls, values: Sequence[Any]) -> 'ExactMatrix':
		n = len(values)
		return cls.from_rows([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

	@property
	def shape(self) -> tuple[int, int]:
		return self.rows, self.cols

	@property
	def is_square(self) -> bool:
		return self.rows == self.cols

	def __getitem__(self, ij: tuple[int, int]) -> GaussianRational:
		'''Raw entry without the prefactor.'''
		i, j = ij
		return self.entries[i*self.cols + j]

	def entry(self, i: int, j: int) -> ComplexSurd:
		'''Exact entry including the prefactor.'''
		return self.prefactor*self[i, j]

	def row(self, i: int) -> tuple[GaussianRational, ...]:
		return self.entries[i*self.cols:(i + 1)*self.cols]

	def row_lists(self) -> list[list[GaussianRational]]:
		return [list(self.row(i)) for i in range(self.rows)]

	def column(self, j: int) -> ExactVector:
		return ExactVector(tuple(self[i, j] for i in range(self.rows)), self.prefactor)

	def is_zero(self) -> bool:
		return not any(self.entries)

	def _canonical(self):
		if self.is_zero():
			return 1, self.entries
		c = self.prefactor.coeff
		return self.prefactor.radicand, tuple(e*c for e in self.entries)

	def __eq__(self, other):
		if not isinstance(other, ExactMatrix):
			return NotImplemented
		return self.shape == other.shape and self._canonical() == other._canonical()

	def __hash__(self):
		return hash((self.shape, self._canonical()))

	def _check_same(self, other: 'ExactMatrix'):
		if self.shape != other.shape:
			raise IncompatibleDimensions(f"Shapes {self.shape} and {other.shape} differ")

	def __add__(self, other):
		if not isinstance(other, ExactMatrix):
			return NotImplemented
		self._check_same(other)
		p, e = _merge(self.prefactor, self.entries, other.prefactor, other.entries, 1)
		return ExactMatrix(self.rows, self.cols, e, p)

	def __sub__(self, other):
		if not isinstance(other, ExactMatrix):
			return NotImplemented
		self._check_same(other)
		p, e = _merge(self.prefactor, self.entries, other.prefactor, other.entries, -1)
		return ExactMatrix(self.rows, self.cols, e, p)

	def __neg__(self):
		return ExactMatrix(self.rows, self.cols, self.entries, -self.prefactor)

	def scale(self, x: Any) -> 'ExactMatrix':
		z = exact(x)
		if z.coeff.im == 0:
			return ExactMatrix(self.rows, self.cols, self.entries, self.prefactor*SurdScalar(z.coeff.re, z.radicand))
		return ExactMatrix(
			self.rows, self.cols,
			tuple(e*z.coeff for e in self.entries),
			self.prefactor*SurdScalar(1, z.radicand)
		)

	def __mul__(self, other):
		if ComplexSurd.of(other) is None:
			return NotImplemented
		return self.scale(other)
	__rmul__ = __mul__

	def __matmul__(self, other):
		if isinstance(other, ExactVector):
			return self.apply(other)
		if not isinstance(other, ExactMatrix):
			return NotImplemented
		if self.cols != other.rows:
			raise IncompatibleDimensions(f"Cannot multiply {self.shape} by {other.shape}")
		entries = []
		for i in range(self.rows):
			r = self.row(i)
			for j in range(other.cols):
				entries.append(sum((r[k]*other[k, j] for k in range(self.cols) if r[k]), ZERO))
		return ExactMatrix(self.rows, other.cols, tuple(entries), self.prefactor*other.prefactor)

	def apply(self, v: ExactVector) -> ExactVector:
		'''Matrix-vector product.'''
		if self.cols != v.dim:
			raise IncompatibleDimensions(f"Cannot apply {self.shape} matrix to dimension {v.dim}")
		comps = tuple(
			sum((a*b for a, b in zip(self.row(i), v.components) if a and b), ZERO)
			for i in range(self.rows)
		)
		return ExactVector(comps, self.prefactor*v.prefactor)

	def adjoint(self) -> 'ExactMatrix':
		'''Conjugate transpose.'''
		return ExactMatrix(
			self.cols, self.rows,
			tuple(self[i, j].conjugate() for j in range(self.cols) for i in range(self.rows)),
			self.prefactor
		)

	def kron(self, other: 'ExactMatrix') -> 'ExactMatrix':
		rows, cols = self.rows*other.rows, self.cols*other.cols
		entries = tuple(
			self[i//other.rows, j//other.cols]*other[i % other.rows, j % other.cols]
			for i in range(rows) for j in range(cols)
		)
		return ExactMatrix(rows, cols, entries, self.prefactor*other.prefactor)

	def shift(self, lam: Any) -> 'ExactMatrix':
		'''self - lam*I.'''
		if not self.is_square:
			raise IncompatibleDimensions(f"Shift of non-square {self.shape} matrix")
		if not exact(lam):
			return self
		return self - ExactMatrix.identity(self.rows).scale(lam)

	def is_hermitian(self) -> bool:
		return self.is_square and self == self.adjoint()

	def trace(self) -> ComplexSurd:
		return self.prefactor*sum((self[i, i] for i in range(min(self.shape))), ZERO)

	def rank(self) -> int:
		return len(echelon(self.row_lists())[1])

	def nullspace(self) -> list[ExactVector]:
		'''Basis of the right null space with coprime Gaussian integer components.'''
		return [ExactVector(v) for v in nullspace(self.row_lists(), self.cols)]

	def to_numpy(self) -> np.ndarray:
		p = self.prefactor.to_float()
		return p*np.array(
			[[e.to_complex() for e in self.row(i)] for i in range(self.rows)],
			dtype=complex
		).reshape(self.rows, self.cols)

def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
	'''[a, b] = ab - ba.'''
	return a@b - b@a

def echelon(rows: list[list[GaussianRational]]) -> tuple[list[list[GaussianRational]], list[int]]:
	'''
	Fraction-free (Bareiss) forward elimination. Returns the echelon rows and
	their pivot columns; the rank is the number of pivots.
	'''

	m = [list(r) for r in rows]
	nrows = len(m)
	ncols = len(m[0]) if m else 0
	pivots = []
	prev = ONE
	r = 0
	for c in range(ncols):
		if r == nrows:
			break
		p = next((i for i in range(r, nrows) if m[i][c]), None)
		if p is None:
			continue
		m[r], m[p] = m[p], m[r]
		piv = m[r][c]
		for i in range(r + 1, nrows):
			f = m[i][c]
			m[i] = [(piv*m[i][k] - f*m[r][k])/prev for k in range(ncols)]
		prev = piv
		pivots.append(c)
		r += 1
	return m, pivots

def nullspace(rows: list[list[GaussianRational]], ncols: int) -> list[tuple[GaussianRational, ...]]:
	'''Null space basis of a row list, one vector per free column.'''

	m, pivots = echelon(rows) if rows else ([], [])
	m = m[:len(pivots)]
	# Reduce to row-reduced echelon form
	for r in reversed(range(len(pivots))):
		c = pivots[r]
		inv = m[r][c].inverse()
		m[r] = [x*inv for x in m[r]]
		for above in range(r):
			f = m[above][c]
			if f:
				m[above] = [x - f*y for x, y in zip(m[above], m[r])]

	basis = []
	for free in (c for c in range(ncols) if c not in pivots):
		x = [ZERO]*ncols
		x[free] = ONE
		for r, c in enumerate(pivots):
			x[c] = -m[r][free]
		basis.append(primitive(x)[1])
	return basis

def rank(m: ExactMatrix) -> int:
	return m.rank()

def gram_schmidt(vectors: Iterable[ExactVector]) -> list[ExactVector]:
	'''
	Exact orthonormal basis of the span, dropping dependent vectors.
	Projections are taken on the raw components so no square roots appear
	until the final normalization.
	'''

	ortho: list[ExactVector] = []
	for v in vectors:
		w = ExactVector(v.components)
		for u in ortho:
			coef = u.inner(w).as_gaussian()/u.raw_norm_squared()
			w = w - u.scale(coef)
		if not w.is_zero():
			ortho.append(ExactVector(w.primitive().components))
	return [ExactVector(u.components).normalized() for u in ortho]

@lru_cache
def swap_matrix(d: int) -> ExactMatrix:
	'''Exchange operator on C^d (x) C^d: |a>|b> -> |b>|a>.'''
	n = d*d
	entries = [ZERO]*(n*n)
	for a in range(d):
		for b in range(d):
			entries[(b*d + a)*n + (a*d + b)] = ONE
	return ExactMatrix(n, n, tuple(entries))

def stack_rank(vectors: Sequence[ExactVector]) -> int:
	'''Dimension of the span of `vectors`.'''
	if not vectors:
		return 0
	return len(echelon([list(v.components) for v in vectors])[1])
