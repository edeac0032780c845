'''
A small ket language for two-particle states, eg

	1/sqrt(6) * (chi(1) x chi(-1) + 2 chi(0) x chi(0) + chi(-1) x chi(1))

Grammar (whitespace insignificant, "x" and "⊗" both mean tensor product):

	expr    := term (("+" | "-") term)*
	term    := tensor (("*" | "/")? tensor)*
	tensor  := unary (("x" | "⊗") unary)?
	unary   := "-" unary | atom
	atom    := integer | "i" | "sqrt" "(" rational ")"
	         | "chi" "(" ["-"] rational ")" | "(" expr ")"
	rational := integer ["/" integer]

Juxtaposition multiplies when the next token can start a tensor. Every
node is kind-checked as a scalar, a single-particle ket or a two-particle
state; `format` prints the canonical text that `parse` reads back to the
same vector.
'''

from dataclasses import dataclass
from fractions import Fraction
import re

from .typings import NamedTuple, Iterator, Literal, Any, Optional, BasisLabel, RationalLike
from .util import KetSyntaxError, UnsupportedSpin, IncompatibleDimensions
from .exactnum import SurdScalar, ComplexSurd, I, exact, rational_text
from .linalg import ExactVector, primitive
from .spinops import SpinJ, photon_ket, photon_basis_change
from . import defaults

class Token(NamedTuple):
	kind: Literal["int", "name", "op", "eof"]
	text: str
	line: int
	column: int

	def describe(self) -> str:
		return "end of input" if self.kind == "eof" else repr(self.text)

TOKEN_RE = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<op>⊗|[()+\-*/])")
NAMES = frozenset({"chi", "sqrt", "i", "x"})

def tokenize(text: str) -> Iterator[Token]:
	'''Split into tokens with 1-based positions, ending with an eof token.'''

	line, start, pos = 1, 0, 0
	while pos < len(text):
		m = TOKEN_RE.match(text, pos)
		col = pos - start + 1
		if m is None:
			raise KetSyntaxError(f"Unexpected character {text[pos]!r}", line, col)
		kind, value = m.lastgroup, m.group()
		pos = m.end()
		match kind:
			case "ws":
				continue
			case "nl":
				line, start = line + 1, pos
				continue
			case "int":
				if len(value) > defaults.MAX_DIGITS:
					raise KetSyntaxError("Integer literal too long", line, col)
			case "name":
				if value not in NAMES:
					raise KetSyntaxError(f"Unknown name {value!r}", line, col, NAMES)
			case "op":
				if value == "⊗":
					value = "x"
					kind = "name"
		yield Token(kind, value, line, col)
	yield Token("eof", "", line, pos - start + 1)

@dataclass(frozen=True)
class Node:
	pos: tuple[int, int]
	'''Line and column of the node's first or operator token.'''

@dataclass(frozen=True)
class RationalLit(Node):
	value: Fraction

@dataclass(frozen=True)
class SurdLit(Node):
	radicand: Fraction

@dataclass(frozen=True)
class ImaginaryUnit(Node):
	pass

@dataclass(frozen=True)
class SingleKet(Node):
	m: Fraction

@dataclass(frozen=True)
class Neg(Node):
	operand: Node

@dataclass(frozen=True)
class Paren(Node):
	inner: Node

@dataclass(frozen=True)
class Binary(Node):
	left: Node
	right: Node

class Add(Binary): pass
class Sub(Binary): pass
class Mul(Binary): pass
class Div(Binary): pass
class Tensor(Binary): pass

ATOM_START = frozenset({"integer", "i", "sqrt", "chi", "("})

class Parser:
	'''Recursive descent over a token list with a nesting limit.'''

	def __init__(self, text: str):
		if len(text) > defaults.MAX_INPUT:
			raise KetSyntaxError(f"Input longer than {defaults.MAX_INPUT} characters", 1, 1)
		self.tokens = list(tokenize(text))
		self.index = 0
		self.depth = 0

	@property
	def tok(self) -> Token:
		return self.tokens[self.index]

	def advance(self) -> Token:
		tok = self.tok
		if tok.kind != "eof":
			self.index += 1
		return tok

	def error(self, msg: str, expected=(), tok: Optional[Token]=None) -> KetSyntaxError:
		tok = tok or self.tok
		return KetSyntaxError(msg, tok.line, tok.column, expected)

	def at(self, *texts: str) -> bool:
		return self.tok.kind in ("op", "name") and self.tok.text in texts

	def expect(self, text: str) -> Token:
		if not self.at(text):
			raise self.error(f"Unexpected {self.tok.describe()}", {repr(text)})
		return self.advance()

	def starts_tensor(self) -> bool:
		return self.tok.kind == "int" or self.at("i", "sqrt", "chi", "(")

	def enter(self):
		self.depth += 1
		if self.depth > defaults.MAX_NESTING:
			raise self.error(f"Nesting deeper than {defaults.MAX_NESTING}")

	def parse(self) -> Node:
		node = self.expr()
		if self.tok.kind != "eof":
			raise self.error(
				f"Unexpected {self.tok.describe()}",
				{"'+'", "'-'", "'*'", "'/'", "end of input"}
			)
		return node

	def expr(self) -> Node:
		node = self.term()
		while self.at("+", "-"):
			op = self.advance()
			cls = Add if op.text == "+" else Sub
			node = cls((op.line, op.column), node, self.term())
		return node

	def term(self) -> Node:
		node = self.tensor()
		while True:
			if self.at("*", "/"):
				op = self.advance()
				cls = Mul if op.text == "*" else Div
				node = cls((op.line, op.column), node, self.tensor())
			elif self.starts_tensor():
				node = Mul((self.tok.line, self.tok.column), node, self.tensor())
			else:
				return node

	def tensor(self) -> Node:
		node = self.unary()
		if self.at("x"):
			op = self.advance()
			node = Tensor((op.line, op.column), node, self.unary())
		return node

	def unary(self) -> Node:
		if self.at("-"):
			op = self.advance()
			self.enter()
			node = Neg((op.line, op.column), self.unary())
			self.depth -= 1
			return node
		return self.atom()

	def integer(self) -> tuple[int, Token]:
		if self.tok.kind != "int":
			raise self.error(f"Unexpected {self.tok.describe()}", {"integer"})
		tok = self.advance()
		return int(tok.text), tok

	def rational(self) -> Fraction:
		p, _ = self.integer()
		if self.at("/"):
			self.advance()
			q, tok = self.integer()
			if q == 0:
				raise self.error("Zero denominator", tok=tok)
			return Fraction(p, q)
		return Fraction(p)

	def atom(self) -> Node:
		tok = self.tok
		pos = (tok.line, tok.column)
		if tok.kind == "int":
			self.advance()
			return RationalLit(pos, Fraction(int(tok.text)))
		if self.at("i"):
			self.advance()
			return ImaginaryUnit(pos)
		if self.at("sqrt"):
			self.advance()
			self.expect("(")
			radicand = self.rational()
			self.expect(")")
			return SurdLit(pos, radicand)
		if self.at("chi"):
			self.advance()
			self.expect("(")
			sign = 1
			if self.at("-"):
				self.advance()
				sign = -1
			label = self.tok
			m = sign*self.rational()
			if (2*m).denominator != 1:
				raise self.error(f"chi label {rational_text(m)} is not a half-integer", tok=label)
			self.expect(")")
			return SingleKet(pos, m)
		if self.at("("):
			self.advance()
			self.enter()
			inner = self.expr()
			self.depth -= 1
			self.expect(")")
			return Paren(pos, inner)
		raise self.error(f"Unexpected {tok.describe()}", ATOM_START | {"'-'"})

SCALAR, KET, PAIR = "scalar", "single-particle ket", "two-particle state"

def _spine(node: Node) -> tuple[Node, list[Binary]]:
	'''Leftmost operand and the binary nodes above it, innermost first.'''
	chain = []
	while isinstance(node, Binary) and not isinstance(node, Tensor):
		chain.append(node)
		node = node.left
	return node, chain[::-1]

def _combine_kinds(node: Binary, a: str, b: str) -> str:
	line, col = node.pos
	match node:
		case Add() | Sub():
			if a != b:
				raise KetSyntaxError(f"Cannot add a {a} and a {b}", line, col)
			return a
		case Mul():
			if a != SCALAR and b != SCALAR:
				raise KetSyntaxError(f"Cannot multiply a {a} by a {b}", line, col)
			return b if a == SCALAR else a
		case Div():
			if b != SCALAR:
				raise KetSyntaxError(f"Cannot divide by a {b}", line, col)
			return a
	raise TypeError(f"Unknown node {node!r}")

def kind_of(node: Node) -> str:
	'''Kind of a node; KetSyntaxError at the offending operator on a mismatch.'''

	match node:
		case RationalLit() | SurdLit() | ImaginaryUnit():
			return SCALAR
		case SingleKet():
			return KET
		case Neg():
			return kind_of(node.operand)
		case Paren():
			return kind_of(node.inner)
		case Tensor():
			a, b = kind_of(node.left), kind_of(node.right)
			if a != KET or b != KET:
				raise KetSyntaxError(f"Tensor product needs two single-particle kets, got a {a} and a {b}", *node.pos)
			return PAIR
		case Binary():
			leftmost, chain = _spine(node)
			kind = kind_of(leftmost)
			for b in chain:
				kind = _combine_kinds(b, kind, kind_of(b.right))
			return kind
	raise TypeError(f"Unknown node {node!r}")

def parse(text: str) -> Node:
	'''
	Parse and kind-check a ket expression. Raises KetSyntaxError with a
	1-based position and expected-token set on any malformed input.
	'''

	node = Parser(text).parse()
	if kind_of(node) == KET:
		raise KetSyntaxError(f"Expected a two-particle state, got a {KET}", *node.pos)
	return node

class EvalContext(NamedTuple):
	'''Spins of the two particle slots and the basis chi(m) is read in.'''

	j1: SpinJ
	j2: SpinJ
	basis: BasisLabel = "standard_m"

	@classmethod
	def of(cls, j1: 'RationalLike|SpinJ', j2: 'RationalLike|SpinJ', basis: BasisLabel="standard_m") -> 'EvalContext':
		ctx = cls(SpinJ.of(j1), SpinJ.of(j2), basis)
		if basis == "cartesian" and (ctx.j1 != SpinJ(2) or ctx.j2 != SpinJ(2)):
			raise UnsupportedSpin("Cartesian kets exist for spin 1 only")
		return ctx

	@property
	def dim(self) -> int:
		return self.j1.dim*self.j2.dim

	def labels(self) -> list[tuple[Fraction, Fraction]]:
		return [(m1, m2) for m1 in self.j1.m_values() for m2 in self.j2.m_values()]

	def ket(self, slot: int, m: Fraction) -> ExactVector:
		spin = self.j1 if slot == 0 else self.j2
		k = spin.index(m)
		if self.basis == "cartesian":
			return photon_ket(m)
		return ExactVector.basis(spin.dim, k)

def _apply(node: Binary, a: Any, b: Any) -> Any:
	match node:
		case Add():
			return a + b
		case Sub():
			return a - b
		case Mul():
			if isinstance(a, ExactVector):
				return a.scale(b)
			if isinstance(b, ExactVector):
				return b.scale(a)
			return a*b
		case Div():
			inv = b.inverse()
			return a.scale(inv) if isinstance(a, ExactVector) else a*inv
	raise TypeError(f"Unknown node {node!r}")

def _eval(node: Node, ctx: EvalContext, slot: int) -> ComplexSurd|ExactVector:
	match node:
		case RationalLit():
			return exact(node.value)
		case SurdLit():
			return exact(SurdScalar(1, node.radicand))
		case ImaginaryUnit():
			return exact(I)
		case SingleKet():
			return ctx.ket(slot, node.m)
		case Neg():
			return -_eval(node.operand, ctx, slot)
		case Paren():
			return _eval(node.inner, ctx, slot)
		case Tensor():
			return _eval(node.left, ctx, 0).kron(_eval(node.right, ctx, 1))
		case Binary():
			leftmost, chain = _spine(node)
			value = _eval(leftmost, ctx, slot)
			for b in chain:
				value = _apply(b, value, _eval(b.right, ctx, slot))
			return value
	raise TypeError(f"Unknown node {node!r}")

def evaluate(node: Node, ctx: EvalContext) -> ExactVector:
	'''
	Exact two-particle vector of a parsed expression. A scalar expression
	is accepted only when it is zero and then gives the zero vector.
	Raises LabelOutOfRange, MixedRadicand or DivisionByZero as they occur.
	'''

	kind = kind_of(node)
	if kind == KET:
		raise KetSyntaxError(f"Expected a two-particle state, got a {KET}", *node.pos)
	value = _eval(node, ctx, 0)
	if kind == SCALAR:
		if value:
			raise KetSyntaxError("Expected a two-particle state, got a nonzero scalar", *node.pos)
		return ExactVector.zeros(ctx.dim)
	return value

def evaluate_text(text: str, ctx: EvalContext) -> ExactVector:
	return evaluate(parse(text), ctx)

def _term_coefficient(z) -> tuple[int, str]:
	'''Sign and body text of a coprime Gaussian integer coefficient.'''

	re_, im = int(z.re), int(z.im)
	if im == 0:
		return (1 if re_ > 0 else -1), "" if abs(re_) == 1 else f"{abs(re_)} "
	if re_ == 0:
		return (1 if im > 0 else -1), "i " if abs(im) == 1 else f"{abs(im)}*i "
	imag = "i" if abs(im) == 1 else f"{abs(im)}*i"
	return 1, f"({re_} {'+' if im > 0 else '-'} {imag}) "

def _prefactor_text(r: Fraction, d: int) -> str:
	if d == 1:
		return rational_text(r)
	x = r*r*d
	if x.numerator == 1:
		return f"1/sqrt({x.denominator})"
	if x.denominator == 1:
		return f"sqrt({x.numerator})"
	return f"sqrt({x.numerator}/{x.denominator})"

def format(v: ExactVector, ctx: EvalContext) -> str:
	'''
	Canonical text of a two-particle vector: a positive prefactor times
	terms with coprime Gaussian integer coefficients, ordered by m1 then m2
	descending. Cartesian vectors are written in chi(m) form.
	'''

	if v.dim != ctx.dim:
		raise IncompatibleDimensions(f"Vector of dimension {v.dim} in a {ctx.dim}-dimensional context")
	if ctx.basis == "cartesian":
		u = photon_basis_change()
		v = u.tensor(u).to_target(v)
	if v.is_zero():
		return "0"

	r, zs = primitive([c*v.prefactor.coeff for c in v.components])
	terms = []
	for (m1, m2), z in zip(ctx.labels(), zs):
		if z:
			sign, body = _term_coefficient(z)
			terms.append((sign, f"{body}chi({rational_text(m1)}) x chi({rational_text(m2)})"))

	first_sign, first = terms[0]
	inner = ("-" if first_sign < 0 else "") + first + "".join(
		f" {'+' if sign > 0 else '-'} {text}" for sign, text in terms[1:]
	)
	d = v.prefactor.radicand
	if r == 1 and d == 1:
		return inner
	if len(terms) == 1 and first_sign > 0:
		return f"{_prefactor_text(r, d)} * {inner}"
	return f"{_prefactor_text(r, d)} * ({inner})"
