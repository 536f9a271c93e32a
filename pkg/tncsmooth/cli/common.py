# -*- coding: utf-8 -*-

import sys, logging, json
from pathlib  import Path
from enum     import IntEnum
from argparse import ArgumentParser, FileType, Action

from ..grid     import NonFiniteError, GridMismatchError
from ..solver   import SOLVER_PROPERTIES, SolverAbortError
from ..util     import parseJSON, parseKeyValue, toJSONValue, CaseDict
from ..__init__ import __version__ as LIBRARY_VERSION
from .__init__  import __version__ as CLI_VERSION

## Default properties for all tools

DEFAULT_SOLVER_PROPERTIES = {
	key: default for key, ( _, _, default ) in SOLVER_PROPERTIES.items()
}

class ExitCode(IntEnum):
	OK            = 0
	UNEXPECTED    = 1
	USAGE         = 2
	IO_ERROR      = 3
	INVALID_INPUT = 4
	SOLVER_ABORT  = 5

class ToolError(Exception):
	"""
	Error reported to the user as a message and a specific exit code.
	"""

	def __init__(self, message, exitCode = ExitCode.INVALID_INPUT):
		super().__init__(message)
		self.exitCode = exitCode

## Private utilities

class _ListPropertiesAction(Action):
	def __init__(self, nargs = 0, defaults = None, **namedArgs):
		super().__init__(nargs = 0, **namedArgs)
		self.defaults = defaults or {}

	def __call__(self, parser, namespace, values, optionString):
		if not self.defaults:
			parser.exit(0, "This tool has no configurable properties.\n")

		maxLength  = max(map(len, self.defaults.keys()))
		properties = "\n".join(
			f"  {key.ljust(maxLength)} = {json.dumps(value)}"
			for key, value in self.defaults.items()
		)

		parser.exit(0, f"Default property values:\n{properties}\n")

## Main class for command-line tools

class Tool:
	"""
	Internal base class for all TNCSmooth command-line tools. Calling a tool
	parses the given arguments, runs it and returns the process exit code.
	"""

	def __init__(self, name, description, defaults = None):
		self.defaults = defaults
		self.parser   = ArgumentParser(
			prog         = name,
			description  = description,
			epilog       = "This tool is part of the TNCSmooth toolkit.",
			add_help     = False,
			allow_abbrev = False
		)

	def __call__(self, argv = None):
		args = self._parseArgs(argv)

		try:
			properties = self._parseProperties(args)
			self.run(args, properties)
		except ToolError as err:
			logging.error(err)
			return err.exitCode
		except SolverAbortError as err:
			logging.error(f"solver aborted: {err}")
			return ExitCode.SOLVER_ABORT
		except (NonFiniteError, GridMismatchError) as err:
			logging.error(f"invalid input data: {err}")
			return ExitCode.INVALID_INPUT
		except OSError as err:
			logging.error(f"I/O error: {err}")
			return ExitCode.IO_ERROR
		except Exception as err:
			logging.exception(f"unexpected error: {err}")
			return ExitCode.UNEXPECTED

		return ExitCode.OK

	def addToolOptions(self):
		group = self.parser.add_argument_group("Tool options")

		group.add_argument(
			"-h", "--help",
			action = "help",
			help   = "Show this help message and exit"
		)
		group.add_argument(
			"-V", "--version",
			action  = "version",
			help    = "Show version information and exit",
			version = f"TNCSmooth {LIBRARY_VERSION}, TNCSmooth CLI {CLI_VERSION}"
		)
		group.add_argument(
			"-L", "--list-properties",
			action   = _ListPropertiesAction,
			help     = "List all supported properties and their default values then exit",
			defaults = self.defaults
		)
		group.add_argument(
			"-v", "--verbose",
			action = "count",
			help   = "Increase logging verbosity (-v = info, -vv = debug)"
		)

		return group

	def addConfigOptions(self):
		group = self.parser.add_argument_group("Configuration options")

		group.add_argument(
			"-c", "--config",
			type    = FileType("rt"),
			help    = "Load properties from a key=value file (# comments allowed)",
			metavar = "file"
		)
		group.add_argument(
			"-p", "--properties",
			type    = FileType("rt"),
			help    = "Load properties from the root object of the specified JSON file",
			metavar = "file"
		)
		group.add_argument(
			"-s", "--set",
			action  = "append",
			type    = str,
			help    = "Set the value of a property (use JSON syntax to specify value)",
			metavar = "property=value"
		)

		return group

	def _parseArgs(self, argv):
		args = self.parser.parse_args(argv)

		logging.basicConfig(
			format = "[%(funcName)-13s %(levelname)-7s] %(message)s",
			level  = (
				logging.WARNING,
				logging.INFO,    # -v
				logging.DEBUG    # -vv
			)[min(args.verbose or 0, 2)]
		)
		return args

	def _parseProperties(self, args):
		properties = CaseDict(self.defaults or {})

		# Lowest to highest precedence: JSON file, key=value file, -s options.
		if getattr(args, "properties", None):
			with args.properties as _file:
				try:
					obj = parseJSON(_file.read())
				except ValueError:
					self.parser.error(f"failed to parse properties from {_file.name}")

			if type(obj) is not dict:
				self.parser.error(f"the root element of {_file.name} is not an object")

			properties.update(obj)
		if getattr(args, "config", None):
			with args.config as _file:
				try:
					properties.update(parseKeyValue(_file.read()))
				except ValueError as err:
					self.parser.error(f"failed to parse {_file.name}: {err}")
		for arg in getattr(args, "set", None) or ():
			try:
				key, value      = arg.split("=", 1)
				properties[key] = json.loads(value)
			except ValueError:
				self.parser.error(f"invalid property specification: {arg}")

		if self.defaults is not None:
			known = CaseDict(self.defaults)

			for key in properties:
				if key not in known:
					self.parser.error(f"unknown property: {key}")

		return properties

	def run(self, args, properties):
		pass

## Shared output helpers

def writeJSON(path, obj):
	def _convert(value):
		match value:
			case dict():
				return { key: _convert(item) for key, item in value.items() }
			case list() | tuple():
				return [ _convert(item) for item in value ]
			case _:
				return toJSONValue(value)

	with Path(path).open("wt", encoding = "utf-8") as _file:
		json.dump(_convert(obj), _file, indent = "\t")
		_file.write("\n")

def printValues(values, _file = None):
	_file     = _file or sys.stdout
	maxLength = max(map(len, values.keys()))

	for key, value in values.items():
		_file.write(f"{key.ljust(maxLength)} = {value}\n")
