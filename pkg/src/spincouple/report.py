'''
Report documents and the renderers that print them. A document is a plain
mapping of JSON types; renderers are looked up by name so the command line
never needs to know how a format is produced.
'''

from datetime import datetime, timezone
from fractions import Fraction
from functools import cache
from importlib import resources
import os
import sys

import hjson
import jsonschema

from .typings import (
	ABC, abstractmethod, Any, Mapping, Optional, TextIO, Union,
	ReportDocument, Verdict, override
)
from .util import logger, DomainError
from .exactnum import GaussianRational, SurdScalar, ComplexSurd, to_text
from . import defaults

SCHEMA_FILE = "report.schema.json"

@cache
def load_schema() -> dict:
	'''The shipped report schema, read with hjson.'''
	text = resources.files(__package__).joinpath(SCHEMA_FILE).read_text(encoding="utf-8")
	return hjson.loads(text)

def to_plain(x: Any) -> Any:
	'''
	Convert to JSON types: exact scalars become their canonical text,
	complex numbers [re, im] pairs and tuples lists. Negative zero is
	normalized so output is byte-stable.
	'''

	match x:
		case bool() | str() | None:
			return x
		case int():
			return x
		case float():
			return float(x) + 0.0
		case complex():
			return [float(x.real) + 0.0, float(x.imag) + 0.0]
		case Fraction() | SurdScalar() | GaussianRational() | ComplexSurd():
			return to_text(x)
		case Mapping():
			return {str(k): to_plain(v) for k, v in x.items()}
		case list() | tuple():
			return [to_plain(v) for v in x]
	raise TypeError(f"Cannot put {x!r} in a report")

def verdict(name: str, passed: bool, expected: bool=True, detail: str="") -> Verdict:
	'''A claim whose outcome `passed` is compared with `expected`.'''
	return Verdict(
		name=name,
		expected="PASS" if expected else "FAIL",
		observed="PASS" if passed else "FAIL",
		ok=passed == expected,
		detail=detail
	)

def new_document(command: str, inputs: Mapping[str, Any]) -> ReportDocument:
	return ReportDocument(
		format_version=defaults.FORMAT_VERSION,
		command=command,
		inputs=dict(inputs),
		results={},
		verdicts=[],
		ok=True
	)

def finish_document(doc: ReportDocument, timestamps: bool=False) -> ReportDocument:
	'''Settle `ok` from the verdicts, optionally stamp the time, and convert to JSON types.'''

	doc["ok"] = all(v["ok"] for v in doc["verdicts"])
	if timestamps:
		doc["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
	plain = to_plain(doc)
	held = sum(v["ok"] for v in plain["verdicts"])
	logger.info(f"{plain['command']}: {held}/{len(plain['verdicts'])} verdicts as expected")
	return plain

def validate(doc: Mapping) -> None:
	'''Raise jsonschema.ValidationError unless `doc` matches the shipped schema.'''
	jsonschema.validate(instance=doc, schema=load_schema())

def dumps_json(doc: Mapping) -> str:
	'''Canonical JSON text: sorted keys, two-space indent, ASCII only.'''
	return hjson.dumpsJSON(doc, sort_keys=True, indent=2)

def loads_json(text: str) -> dict:
	return hjson.loads(text)

def use_color(policy: str="auto", stream: Optional[TextIO]=None) -> bool:
	'''
	Whether to emit ANSI colour. "auto" honours NO_COLOR and colours only
	a terminal.
	'''

	match policy:
		case "always":
			return True
		case "never":
			return False
	if os.getenv("NO_COLOR"):
		return False
	stream = stream or sys.stdout
	return hasattr(stream, "isatty") and stream.isatty()

GREEN = "\033[32m"
RED = "\033[31m"
RESET = "\033[0m"

class Renderer(ABC):
	'''Turns a report document into text.'''

	registry: dict[str, type['Renderer']] = {}

	def __init__(self, config: Optional[Mapping]=None):
		self.config = config or {}

	@abstractmethod
	def render(self, doc: ReportDocument) -> str:
		'''Full output including the trailing newline.'''

	@staticmethod
	def register(name):
		'''Register a renderer by name.'''

		def decorator(cls):
			logger.debug(f"Registering renderer {cls.__name__} as {name!r}")
			Renderer.registry[name] = cls
			return cls
		return decorator

	@classmethod
	def find(cls, key: Union[str, type['Renderer']]) -> type['Renderer']:
		'''Find a renderer by name or return the key if it is already a renderer.'''

		if isinstance(key, str):
			try:
				return cls.registry[key]
			except KeyError:
				raise DomainError(f"Unknown output format {key!r}") from None
		return key

@Renderer.register("json")
class JsonRenderer(Renderer):
	@override
	def render(self, doc):
		return dumps_json(doc) + "\n"

@Renderer.register("text")
class TextRenderer(Renderer):
	'''Aligned plain-text tables, PASS and FAIL optionally coloured.'''

	def __init__(self, config=None, stream: Optional[TextIO]=None):
		super().__init__(config)
		self.color = use_color(self.config.get("color", "auto"), stream)

	@staticmethod
	def cell(value: Any) -> str:
		match value:
			case None:
				return "-"
			case bool():
				return "yes" if value else "no"
			case float():
				if value and abs(value) < 1e-4:
					return f"{value:.2e}"
				return f"{value:.5f}"
			case list():
				return ", ".join(TextRenderer.cell(v) for v in value)
			case dict():
				return ", ".join(f"{k}={TextRenderer.cell(v)}" for k, v in value.items())
		return str(value)

	def paint(self, text: str, good: bool) -> str:
		if not self.color:
			return text
		return f"{GREEN if good else RED}{text}{RESET}"

	def table(self, rows: list[dict], highlight: Optional[str]=None) -> list[str]:
		'''
		Rows of dicts as an aligned table. The `highlight` column is painted
		green or red according to each row's "ok" field.
		'''

		columns = []
		for row in rows:
			columns.extend(k for k in row if k not in columns)
		cells = [[self.cell(row.get(c)) for c in columns] for row in rows]
		widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]

		lines = [
			"  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip(),
			"  ".join("-"*w for w in widths)
		]
		for row, texts in zip(rows, cells):
			out = []
			for c, text, w in zip(columns, texts, widths):
				padded = text.ljust(w)
				if c == highlight:
					padded = self.paint(text, row.get("ok", True)) + " "*(w - len(text))
				out.append(padded)
			lines.append("  ".join(out).rstrip())
		return lines

	def section(self, value: Any, indent: str="") -> list[str]:
		if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
			return [indent + line for line in self.table(value)]
		if isinstance(value, dict):
			lines = []
			for k, v in value.items():
				if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict)):
					lines.append(f"{indent}{k}:")
					lines.extend(self.section(v, indent + "  "))
				else:
					lines.append(f"{indent}{k}: {self.cell(v)}")
			return lines
		return [indent + self.cell(value)]

	@override
	def render(self, doc):
		lines = [f"{doc['command']} [{doc['format_version']}]"]
		for k, v in doc["inputs"].items():
			lines.append(f"  {k}: {self.cell(v)}")

		for name, value in doc["results"].items():
			lines += ["", f"== {name} =="]
			lines += self.section(value)

		verdicts = doc["verdicts"]
		if verdicts:
			lines += ["", "== verdicts =="]
			lines += self.table(verdicts, highlight="observed")
			held = sum(v["ok"] for v in verdicts)
			lines += ["", f"{held}/{len(verdicts)} verdicts as expected: {self.paint('OK' if doc['ok'] else 'FAILED', doc['ok'])}"]

		if "generated_at" in doc:
			lines.append(f"generated at {doc['generated_at']}")
		return "\n".join(lines) + "\n"
