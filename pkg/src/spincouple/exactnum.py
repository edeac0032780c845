'''
Exact scalars for two-particle spin coupling.

Every amplitude met in the supported coupling problems is a Gaussian
rational times the square root of a squarefree integer. `GaussianRational`
holds the complex rational part, `SurdScalar` a real c*sqrt(d) and
`ComplexSurd` the product g*sqrt(d). All three are immutable, hashable and
canonical on construction, so structural equality is value equality.
'''

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
import math

from .typings import Rational, Any, Optional
from . import defaults
from .util import DomainError, DivisionByZero, Incompatible, MixedRadicand

def rational(p: int|Fraction, q: int|Fraction=1) -> Rational:
	'''Build p/q in lowest terms, raising DivisionByZero for q == 0.'''
	if q == 0:
		raise DivisionByZero(f"Rational with zero denominator: {p}/{q}")
	return Fraction(p)/Fraction(q)

def rational_inverse(x: Rational) -> Rational:
	if x == 0:
		raise DivisionByZero("Inverse of rational zero")
	return 1/Fraction(x)

def _rat(x: Any) -> Fraction:
	'''Coerce int or Fraction, refusing floats so nothing inexact leaks in.'''
	if isinstance(x, Fraction):
		return x
	if isinstance(x, int):
		return Fraction(x)
	raise DomainError(f"Expected an exact rational, got {x!r}")

@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
	'''
	Write n = k*k*m with m squarefree and return (k, m).

	Trial division stops at `defaults.SQUAREFREE_TRIAL_LIMIT`. What is left
	then has only large prime factors: a perfect square, or below the cube
	of the limit, is settled; anything else raises DomainError.
	'''

	if n < 0:
		raise DomainError(f"Negative radicand {n}")

	limit = defaults.SQUAREFREE_TRIAL_LIMIT
	k = m = 1
	d = 2
	while d*d <= n:
		if d > limit:
			break
		e = 0
		while n % d == 0:
			n //= d
			e += 1
		k *= d**(e//2)
		if e % 2:
			m *= d
		d += 1 if d == 2 else 2
	else:
		return k, m*n

	r = math.isqrt(n)
	if r*r == n:
		return k*r, m
	# at most two distinct large primes
	if n < limit**3:
		return k, m*n
	raise DomainError(f"Radicand has a {n.bit_length()}-bit cofactor too large to reduce exactly")

def rational_text(x: Rational) -> str:
	'''"p" or "p/q".'''
	return str(Fraction(x))

@dataclass(frozen=True, slots=True)
class GaussianRational:
	'''Complex number a + b*i with rational parts.'''

	re: Fraction = Fraction(0)
	im: Fraction = Fraction(0)

	def __post_init__(self):
		object.__setattr__(self, "re", _rat(self.re))
		object.__setattr__(self, "im", _rat(self.im))

	@staticmethod
	def of(x: Any) -> Optional['GaussianRational']:
		'''Coerce ints and Fractions, None for anything else.'''
		if isinstance(x, GaussianRational):
			return x
		if isinstance(x, (int, Fraction)):
			return GaussianRational(Fraction(x))
		return None

	def __bool__(self):
		return bool(self.re or self.im)

	def __eq__(self, other):
		if (o := GaussianRational.of(other)) is None:
			return NotImplemented
		return self.re == o.re and self.im == o.im

	def __hash__(self):
		return hash(self.re) if self.im == 0 else hash((self.re, self.im))

	def __neg__(self):
		return GaussianRational(-self.re, -self.im)

	def __pos__(self):
		return self

	def __add__(self, other):
		if (o := GaussianRational.of(other)) is None:
			return NotImplemented
		return GaussianRational(self.re + o.re, self.im + o.im)
	__radd__ = __add__

	def __sub__(self, other):
		if (o := GaussianRational.of(other)) is None:
			return NotImplemented
		return GaussianRational(self.re - o.re, self.im - o.im)

	def __rsub__(self, other):
		if (o := GaussianRational.of(other)) is None:
			return NotImplemented
		return o - self

	def __mul__(self, other):
		if (o := GaussianRational.of(other)) is None:
			return NotImplemented
		return GaussianRational(
			self.re*o.re - self.im*o.im,
			self.re*o.im + self.im*o.re
		)
	__rmul__ = __mul__

	def __truediv__(self, other):
		if (o := GaussianRational.of(other)) is None:
			return NotImplemented
		return self*o.inverse()

	def __rtruediv__(self, other):
		if (o := GaussianRational.of(other)) is None:
			return NotImplemented
		return o*self.inverse()

	def conjugate(self) -> 'GaussianRational':
		return GaussianRational(self.re, -self.im)

	def abs_squared(self) -> Fraction:
		return self.re*self.re + self.im*self.im

	def inverse(self) -> 'GaussianRational':
		'''1/z = conj(z)/|z|^2.'''
		n = self.abs_squared()
		if n == 0:
			raise DivisionByZero("Inverse of Gaussian zero")
		return GaussianRational(self.re/n, -self.im/n)

	@property
	def is_real(self) -> bool:
		return self.im == 0

	def to_complex(self) -> complex:
		return complex(float(self.re), float(self.im))

	def __str__(self):
		return gaussian_text(self)

ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))
I = GaussianRational(Fraction(0), Fraction(1))

def gaussian_text(g: GaussianRational) -> str:
	'''"a", "b i", "a + b i" or "a - b i" with rational a and b.'''

	if g.im == 0:
		return rational_text(g.re)

	mag = abs(g.im)
	imag = "i" if mag == 1 else f"{rational_text(mag)} i"
	if g.re == 0:
		return imag if g.im > 0 else f"-{imag}"
	sign = "+" if g.im > 0 else "-"
	return f"{rational_text(g.re)} {sign} {imag}"

def gaussian_add(a: GaussianRational, b: GaussianRational) -> GaussianRational:
	return a + b

def gaussian_sub(a: GaussianRational, b: GaussianRational) -> GaussianRational:
	return a - b

def gaussian_mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
	return a*b

def gaussian_conjugate(a: GaussianRational) -> GaussianRational:
	return a.conjugate()

def gaussian_invert(a: GaussianRational) -> GaussianRational:
	'''Multiplicative inverse; DivisionByZero for zero.'''
	return a.inverse()

def _canonical_radicand(coeff, radicand: Any) -> tuple[Any, int]:
	'''
	Fold a nonnegative rational radicand into (coeff', d) with d a squarefree
	integer, using sqrt(p/q) = sqrt(p*q)/q.
	'''

	r = _rat(radicand)
	if r < 0:
		raise DomainError(f"Negative radicand {r}")
	if r == 0 or not coeff:
		return coeff*0, 1
	if r.denominator == 1 and r.numerator == 1:
		return coeff, 1
	k, m = squarefree_split(r.numerator*r.denominator)
	return coeff*Fraction(k, r.denominator), m

@total_ordering
@dataclass(frozen=True, slots=True)
class SurdScalar:
	'''Real number coeff*sqrt(radicand) with squarefree integer radicand.'''

	coeff: Fraction = Fraction(0)
	radicand: int = 1

	def __post_init__(self):
		coeff, radicand = _canonical_radicand(_rat(self.coeff), self.radicand)
		object.__setattr__(self, "coeff", coeff)
		object.__setattr__(self, "radicand", radicand)

	@staticmethod
	def of(x: Any) -> Optional['SurdScalar']:
		if isinstance(x, SurdScalar):
			return x
		if isinstance(x, (int, Fraction)):
			return SurdScalar(Fraction(x))
		return None

	def __bool__(self):
		return self.coeff != 0

	def __eq__(self, other):
		if (o := SurdScalar.of(other)) is not None:
			return self.coeff == o.coeff and self.radicand == o.radicand
		if isinstance(other, (GaussianRational, ComplexSurd)):
			return ComplexSurd.of(self) == other
		return NotImplemented

	def __hash__(self):
		return hash(self.coeff) if self.radicand == 1 else hash((self.coeff, self.radicand))

	def __lt__(self, other):
		if (o := SurdScalar.of(other)) is None:
			return NotImplemented
		a, b = self.sign(), o.sign()
		if a != b:
			return a < b
		# Same sign: compare squares, reversed for negatives
		sa, sb = self.square(), o.square()
		return sa < sb if a > 0 else sa > sb

	def __neg__(self):
		return SurdScalar(-self.coeff, self.radicand)

	def __pos__(self):
		return self

	def __abs__(self):
		return SurdScalar(abs(self.coeff), self.radicand)

	def __add__(self, other):
		if (o := SurdScalar.of(other)) is None:
			if isinstance(other, (GaussianRational, ComplexSurd)):
				return ComplexSurd.of(self) + other
			return NotImplemented
		return surd_add(self, o)
	__radd__ = __add__

	def __sub__(self, other):
		return self + (-other)

	def __rsub__(self, other):
		return (-self) + other

	def __mul__(self, other):
		if (o := SurdScalar.of(other)) is None:
			if isinstance(other, (GaussianRational, ComplexSurd)):
				return ComplexSurd.of(self)*other
			return NotImplemented
		return surd_mul(self, o)
	__rmul__ = __mul__

	def __truediv__(self, other):
		if (o := SurdScalar.of(other)) is None:
			if isinstance(other, (GaussianRational, ComplexSurd)):
				return ComplexSurd.of(self)/other
			return NotImplemented
		return self*o.inverse()

	def __rtruediv__(self, other):
		if (o := SurdScalar.of(other)) is None:
			return NotImplemented
		return o*self.inverse()

	def inverse(self) -> 'SurdScalar':
		'''1/(c*sqrt(d)) = sqrt(d)/(c*d).'''
		if self.coeff == 0:
			raise DivisionByZero("Inverse of surd zero")
		return SurdScalar(1/(self.coeff*self.radicand), self.radicand)

	def square(self) -> Fraction:
		return self.coeff*self.coeff*self.radicand

	def sign(self) -> int:
		return (self.coeff > 0) - (self.coeff < 0)

	def to_float(self) -> float:
		return float(self.coeff)*math.sqrt(self.radicand)

	def __str__(self):
		return surd_text(self)

ONE_SURD = SurdScalar(Fraction(1))
INV_SQRT2 = SurdScalar(Fraction(1, 2), 2)

def surd_normalize(coeff: Rational|int, radicand: Rational|int) -> SurdScalar:
	'''
	Canonical coeff*sqrt(radicand) for a nonnegative rational radicand.
	Raises DomainError for negative radicands.
	'''
	return SurdScalar(_rat(coeff), _rat(radicand))

def surd_mul(a: SurdScalar, b: SurdScalar) -> SurdScalar:
	return SurdScalar(a.coeff*b.coeff, a.radicand*b.radicand)

def surd_add(a: SurdScalar, b: SurdScalar) -> SurdScalar:
	'''Sum of two surds; raises MixedRadicand unless radicands agree.'''
	if not a:
		return b
	if not b:
		return a
	if a.radicand != b.radicand:
		raise MixedRadicand(f"Cannot add {a} and {b} exactly")
	return SurdScalar(a.coeff + b.coeff, a.radicand)

def surd_try_add(a: SurdScalar, b: SurdScalar) -> Optional[SurdScalar]:
	'''Exact sum, or None when the radicands differ and neither operand is zero.'''
	try:
		return surd_add(a, b)
	except MixedRadicand:
		return None

def surd_text(s: SurdScalar) -> str:
	'''"p/q", "sqrt(d)", "-sqrt(d)", "n*sqrt(d)" or "(p/q)*sqrt(d)".'''

	if s.radicand == 1:
		return rational_text(s.coeff)
	root = f"sqrt({s.radicand})"
	match s.coeff:
		case 1:
			return root
		case -1:
			return f"-{root}"
	if s.coeff.denominator == 1:
		return f"{s.coeff}*{root}"
	return f"({s.coeff})*{root}"

@dataclass(frozen=True, slots=True)
class ComplexSurd:
	'''Gaussian rational times sqrt(radicand), radicand squarefree.'''

	coeff: GaussianRational = ZERO
	radicand: int = 1

	def __post_init__(self):
		g = GaussianRational.of(self.coeff)
		if g is None:
			raise DomainError(f"Expected a Gaussian rational, got {self.coeff!r}")
		coeff, radicand = _canonical_radicand(g, self.radicand)
		object.__setattr__(self, "coeff", coeff)
		object.__setattr__(self, "radicand", radicand)

	@staticmethod
	def of(x: Any) -> Optional['ComplexSurd']:
		'''Coerce any exact scalar, None for anything else.'''
		if isinstance(x, ComplexSurd):
			return x
		if isinstance(x, SurdScalar):
			return ComplexSurd(GaussianRational(x.coeff), x.radicand)
		if (g := GaussianRational.of(x)) is not None:
			return ComplexSurd(g)
		return None

	def __bool__(self):
		return bool(self.coeff)

	def __eq__(self, other):
		if (o := ComplexSurd.of(other)) is None:
			return NotImplemented
		return self.coeff == o.coeff and self.radicand == o.radicand

	def __hash__(self):
		if self.coeff.im == 0:
			return hash(SurdScalar(self.coeff.re, self.radicand))
		return hash((self.coeff, self.radicand))

	def __neg__(self):
		return ComplexSurd(-self.coeff, self.radicand)

	def __add__(self, other):
		if (o := ComplexSurd.of(other)) is None:
			return NotImplemented
		if not self:
			return o
		if not o:
			return self
		if self.radicand != o.radicand:
			raise MixedRadicand(f"Cannot add {self} and {o} exactly")
		return ComplexSurd(self.coeff + o.coeff, self.radicand)
	__radd__ = __add__

	def __sub__(self, other):
		if (o := ComplexSurd.of(other)) is None:
			return NotImplemented
		return self + (-o)

	def __rsub__(self, other):
		if (o := ComplexSurd.of(other)) is None:
			return NotImplemented
		return o + (-self)

	def __mul__(self, other):
		if (o := ComplexSurd.of(other)) is None:
			return NotImplemented
		g = math.gcd(self.radicand, o.radicand)
		# sqrt(d1*d2) = g*sqrt(d1/g * d2/g) for squarefree d1, d2
		return ComplexSurd(
			self.coeff*o.coeff*g,
			(self.radicand//g)*(o.radicand//g)
		)
	__rmul__ = __mul__

	def __truediv__(self, other):
		if (o := ComplexSurd.of(other)) is None:
			return NotImplemented
		return self*o.inverse()

	def __rtruediv__(self, other):
		if (o := ComplexSurd.of(other)) is None:
			return NotImplemented
		return o*self.inverse()

	def conjugate(self) -> 'ComplexSurd':
		return ComplexSurd(self.coeff.conjugate(), self.radicand)

	def inverse(self) -> 'ComplexSurd':
		'''1/(g*sqrt(d)) = conj(g)*sqrt(d)/(|g|^2*d).'''
		n = self.coeff.abs_squared()
		if n == 0:
			raise DivisionByZero("Inverse of zero")
		return ComplexSurd(self.coeff.conjugate()*(1/(n*self.radicand)), self.radicand)

	def abs_squared(self) -> Fraction:
		return self.coeff.abs_squared()*self.radicand

	def as_surd(self) -> SurdScalar:
		'''The real surd this value equals, Incompatible if it has an imaginary part.'''
		if self.coeff.im != 0:
			raise Incompatible(f"{self} is not real")
		return SurdScalar(self.coeff.re, self.radicand)

	def as_gaussian(self) -> GaussianRational:
		if self.radicand != 1:
			raise Incompatible(f"{self} is irrational")
		return self.coeff

	def to_complex(self) -> complex:
		return self.coeff.to_complex()*math.sqrt(self.radicand)

	def __str__(self):
		return complex_surd_text(self)

def complex_surd_text(z: ComplexSurd) -> str:
	if z.radicand == 1:
		return gaussian_text(z.coeff)
	if z.coeff.im == 0:
		return surd_text(SurdScalar(z.coeff.re, z.radicand))
	return f"({gaussian_text(z.coeff)})*sqrt({z.radicand})"

def exact(x: Any) -> ComplexSurd:
	'''Promote any exact scalar to a ComplexSurd.'''
	if (z := ComplexSurd.of(x)) is None:
		raise DomainError(f"Not an exact scalar: {x!r}")
	return z

def to_float(x: Any) -> complex:
	'''Double-precision value of any exact scalar.'''

	match x:
		case SurdScalar():
			return complex(x.to_float())
		case GaussianRational() | ComplexSurd():
			return x.to_complex()
		case Fraction() | int():
			return complex(float(x))
	raise DomainError(f"Not an exact scalar: {x!r}")

def to_text(x: Any) -> str:
	'''Canonical text of any exact scalar.'''

	match x:
		case SurdScalar():
			return surd_text(x)
		case GaussianRational():
			return gaussian_text(x)
		case ComplexSurd():
			return complex_surd_text(x)
		case Fraction() | int():
			return rational_text(Fraction(x))
	raise DomainError(f"Not an exact scalar: {x!r}")
