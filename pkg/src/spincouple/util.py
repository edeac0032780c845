'''
Common utilities: the package logger, the error hierarchy and permissive
parsers shared by the library and the command line.
'''

import logging
import os
from fractions import Fraction

logger = logging.getLogger("spincouple")
if loglevel := os.getenv("LOG_LEVEL"):
	loglevel = loglevel.upper()
	logger.addHandler(logging.StreamHandler())
	logger.setLevel(loglevel)
	logger.info(f"Set log level to {loglevel}")

# Make sure relative imports are after logging
from .typings import *

class SpinCoupleError(Exception):
	'''Base of every error the library raises on purpose.'''
	
	exit_code: ClassVar[int] = 2
	'''Process exit status the command line maps this error to.'''

class DomainError(SpinCoupleError, ValueError):
	'''Operand outside the domain of an operation, eg a negative radicand.'''

class DivisionByZero(SpinCoupleError, ZeroDivisionError):
	'''Inverse or quotient of an exact zero.'''

class Incompatible(SpinCoupleError, ValueError):
	'''Exact values whose combination leaves the representable set.'''

class MixedRadicand(Incompatible):
	'''Sum of surds with distinct radicands, eg sqrt(2) + sqrt(3).'''

class UnsupportedSpin(SpinCoupleError, ValueError):
	'''Spin values the exact path cannot represent.'''

class IncompatibleDimensions(SpinCoupleError, ValueError):
	'''Operands whose shapes do not match.'''

class NoSolution(SpinCoupleError, ArithmeticError):
	'''Linear system without a unique nontrivial solution.'''

class ZeroVector(SpinCoupleError, ValueError):
	'''Operation undefined on the zero vector.'''

class NonSquareComposite(IncompatibleDimensions):
	'''Composite dimension is not d*d for the given single-particle d.'''

class LabelOutOfRange(SpinCoupleError, ValueError):
	'''Magnetic quantum number not admissible for its spin.'''

class ConfigError(SpinCoupleError, ValueError):
	'''Invalid SPINCOUPLE_* environment setting.'''

class KetSyntaxError(SpinCoupleError, SyntaxError):
	'''Malformed ket expression with a 1-based position.'''
	
	def __init__(self, msg: str, line: int, column: int, expected: Iterable[str]=()):
		'''
		Parameters:
			msg: Error message
			line: 1-based line of the offending token
			column: 1-based column of the offending token
			expected: Token descriptions that would have been accepted
		'''
		self.expected = frozenset(expected)
		if self.expected:
			msg = f"{msg} (expected {', '.join(sorted(self.expected))})"
		super().__init__(f"{line}:{column}: {msg}")
		# SyntaxError keeps its own lineno/offset, set after init
		self.line = self.lineno = line
		self.column = self.offset = column
		self.reason = msg
	
	def __str__(self):
		return f"{self.line}:{self.column}: {self.reason}"

TRUE_WORDS = frozenset({"1", "true", "yes", "on"})
FALSE_WORDS = frozenset({"0", "false", "no", "off", ""})

def parse_bool(value: Any) -> bool:
	'''
	Flag settings such as SPINCOUPLE_TIMESTAMPS: bools pass through, strings
	are matched case-insensitively against TRUE_WORDS and FALSE_WORDS.
	'''

	if isinstance(value, bool):
		return value
	word = str(value).strip().lower()
	if word in TRUE_WORDS:
		return True
	if word in FALSE_WORDS:
		return False
	raise ValueError(f"{value!r} is not one of {', '.join(sorted(TRUE_WORDS | FALSE_WORDS - {''}))}")

def parse_choice(*choices: str) -> Callable[[Any], str]:
	'''Build a parser accepting one of `choices`, case-insensitively.'''
	
	def parse(value: Any) -> str:
		v = str(value).strip().lower()
		if v not in choices:
			raise ValueError(f"Expected one of {', '.join(choices)}, got {value!r}")
		return v
	return parse

def parse_basis(value: Any) -> BasisLabel:
	'''Single-particle basis name; "m" is short for "standard_m".'''
	
	v = parse_choice("m", "standard_m", "cartesian")(value)
	return "standard_m" if v == "m" else v

def parse_rational(text: RationalLike) -> Fraction:
	'''
	Parse "p" or "p/q" with optional sign. Decimals and floats are rejected
	so inputs stay exact.
	'''
	
	if isinstance(text, bool):
		raise DomainError(f"Not a rational: {text!r}")
	if isinstance(text, (int, Fraction)):
		return Fraction(text)
	if not isinstance(text, str):
		raise DomainError(f"Not a rational: {text!r}")
	
	s = text.strip()
	num, slash, den = s.partition("/")
	try:
		p = int(num.strip())
		q = int(den.strip()) if slash else 1
	except ValueError:
		raise DomainError(f"Not a rational: {text!r}") from None
	if q == 0:
		raise DivisionByZero(f"Zero denominator in {text!r}")
	return Fraction(p, q)

def parse_halfint(text: RationalLike) -> Fraction:
	'''Parse an integer or half-integer such as "1", "-3/2" or "1/2".'''
	
	value = parse_rational(text)
	if (2*value).denominator != 1:
		raise DomainError(f"Not a half-integer: {text!r}")
	return value
