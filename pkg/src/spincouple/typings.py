'''
Shared type names: the exact-number aliases, spin and basis labels, the
report TypedDicts and the abstract collection types every module imports
from here rather than from typing.
'''

import typing
from typing import TypeAlias, Optional, Union, Literal, Any, TypedDict, NamedTuple, ClassVar, TextIO
from collections import UserDict
# collections.abc versions are canonical, typing versions are deprecated
from collections.abc import *
from abc import ABC, abstractmethod
from fractions import Fraction

NotRequired: TypeAlias = getattr(typing, "NotRequired", Optional)
override = getattr(typing, "override", lambda x: x)

Rational: TypeAlias = Fraction
'''Exact rational p/q in lowest terms with q > 0.'''

RationalLike: TypeAlias = Fraction|int|str
'''Anything `Fraction` accepts for a quantum number or coefficient.'''

BasisLabel: TypeAlias = Literal["cartesian", "standard_m"]
'''Single-particle basis: Cartesian polarization axes or Sz eigenbasis.'''

Parity: TypeAlias = Literal[1, -1]|None
'''Exchange parity, None when a state is neither symmetric nor antisymmetric.'''

class SpinCoupleConfig(TypedDict, total=False):
	'''Runtime configuration for the command line and renderers.'''
	
	color: NotRequired[str]
	'''Colour policy: "auto", "always" or "never".'''
	format: NotRequired[str]
	'''Output renderer name: "text" or "json".'''
	basis: NotRequired[str]
	'''Default single-particle basis for commands taking --basis.'''
	timestamps: NotRequired[bool]
	'''Whether reports carry a generated_at field.'''

class Verdict(TypedDict):
	'''One checked claim of a report.'''
	
	name: str
	'''Short identifier of the claim.'''
	expected: Literal["PASS", "FAIL"]
	'''Outcome the claim is expected to have.'''
	observed: Literal["PASS", "FAIL"]
	'''Outcome that was computed.'''
	ok: bool
	'''Whether observed matches expected.'''
	detail: str
	'''Residual or value text backing the outcome.'''

class ReportDocument(TypedDict):
	'''Machine-readable result of one command.'''
	
	format_version: str
	command: str
	inputs: dict[str, Any]
	results: dict[str, Any]
	verdicts: list[Verdict]
	ok: bool
	generated_at: NotRequired[str]

class Check(NamedTuple):
	'''Outcome of one exact identity check.'''
	
	name: str
	'''Identity being checked, in ket notation.'''
	passed: bool
	'''Whether the identity holds exactly.'''
	detail: str = ""
	'''Residual or counterexample text.'''
