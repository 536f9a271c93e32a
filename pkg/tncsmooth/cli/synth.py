# -*- coding: utf-8 -*-

import logging
from pathlib import Path

from ..image import saveImage
from ..synth import PATTERN_KINDS, PATTERN_GEOMETRY, PatternSpec, makePattern, \
	addGaussianNoise
from .common import Tool, ToolError

## Tool classes

class _TNCSynth(Tool):
	def __init__(self):
		# Every geometry parameter of every pattern kind can be set as a
		# property; None means "scaled to the grid size".
		super().__init__(
			"tncsynth",
			"Generates a synthetic test pattern, optionally with Gaussian noise.",
			{
				"foreground": 1.0,
				"background": 0.0,
				**{
					key: None
					for geometry in PATTERN_GEOMETRY.values()
					for key in geometry
				}
			}
		)

		self.addToolOptions()
		self.addConfigOptions()
		self.addNoiseOptions()
		self.addFileOptions()

	def addNoiseOptions(self):
		group = self.parser.add_argument_group("Noise options")

		group.add_argument(
			"-n", "--sigma",
			type    = float,
			default = 0.0,
			help    = "Standard deviation of Gaussian noise to add (default 0)",
			metavar = "value"
		)
		group.add_argument(
			"-S", "--seed",
			type    = int,
			default = 0,
			help    = "Seed of the noise generator (default 0)",
			metavar = "seed"
		)
		group.add_argument(
			"-b", "--bits",
			type    = int,
			choices = ( 8, 16 ),
			default = 16,
			help    = "Bit depth of the saved image (default 16)"
		)

		return group

	def addFileOptions(self):
		group = self.parser.add_argument_group("Pattern and file paths")

		group.add_argument(
			"kind",
			type    = str.lower,
			choices = PATTERN_KINDS,
			help    = "Pattern to generate"
		)
		group.add_argument(
			"rows",
			type = int,
			help = "Number of rows (M)"
		)
		group.add_argument(
			"cols",
			type = int,
			help = "Number of columns (N)"
		)
		group.add_argument(
			"outputFile",
			type = Path,
			help = "Path to image to be generated (.png, .pgm or .raw)"
		)

		return group

	def run(self, args, properties):
		geometry = PATTERN_GEOMETRY[args.kind]
		options  = {
			key: properties[key]
			for key in geometry
			if properties[key] is not None
		}

		try:
			pattern = PatternSpec(
				args.kind,
				args.rows,
				args.cols,
				properties["foreground"],
				properties["background"],
				**options
			)
			field = addGaussianNoise(makePattern(pattern), args.sigma, args.seed)
		except (TypeError, ValueError) as err:
			raise ToolError(f"invalid pattern: {err}")

		args.outputFile.parent.mkdir(parents = True, exist_ok = True)
		saveImage(args.outputFile, field, args.bits)

		logging.info(f"saved {pattern} to {args.outputFile.name}")

## Exports

tncsynth = _TNCSynth()

if __name__ == "__main__":
	raise SystemExit(tncsynth())
