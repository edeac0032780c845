'''
Layered configuration: command line flags over SPINCOUPLE_* environment
variables (optionally read from a .env file) over static defaults.
'''

import os

from .typings import UserDict, SpinCoupleConfig, Mapping, Optional
from .util import logger, parse_bool, parse_choice, parse_basis, ConfigError
from . import defaults

class DefaultConfig(UserDict):
	'''Config which defers to a given default for missing keys.'''

	def __init__(self, config: Optional[Mapping]=None, default: Optional[Mapping]=None):
		super().__init__({k: v for k, v in (config or {}).items() if v is not None})
		self._default = dict(default or {})
	
	def __iter__(self):
		yield from self.data
		yield from (k for k in self._default if k not in self.data)
	
	def __contains__(self, name):
		return name in self.data or name in self._default
	
	def __len__(self):
		return len(set(self.data) | set(self._default))
	
	def __missing__(self, name):
		return self._default[name]
	
	def __repr__(self):
		return f"DefaultConfig({self.data!r}, {self._default!r})"
	
	def copy(self):
		return DefaultConfig(self.data, self._default)

# Configuration schema
CONFIG_SCHEMA = dict(
	color = parse_choice("auto", "always", "never"),
	format = parse_choice("text", "json"),
	basis = parse_basis,
	timestamps = parse_bool
)
'''Parsers for each SPINCOUPLE_<NAME> environment variable.'''

ENV_PREFIX = "SPINCOUPLE_"

def load_config(dotenv: bool=True) -> SpinCoupleConfig:
	'''
	Read the environment through CONFIG_SCHEMA on top of the static defaults.
	Invalid values raise ConfigError naming the variable.
	'''
	
	if dotenv:
		from dotenv import load_dotenv
		load_dotenv()
	
	config = {}
	for name, schema in CONFIG_SCHEMA.items():
		var = ENV_PREFIX + name.upper()
		value = os.getenv(var) or defaults.config.get(name)
		if value is not None and value != "":
			try:
				config[name] = schema(value)
			except ValueError as e:
				raise ConfigError(f"{var}: {e}") from None
	
	logger.debug(f"Loaded {config=}")
	return config
