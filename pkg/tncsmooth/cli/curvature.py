# -*- coding: utf-8 -*-

import logging
from pathlib import Path

from ..curvature import DirectionSet, normalCurvatureMap, meanCurvatureMap, \
	gaussianCurvatureMap, tncMap, normalizeForDisplay
from ..grid      import ScalarField
from ..image     import loadImage, saveImage, saveRaw
from .common     import Tool, ToolError

CURVATURE_KINDS = ( "mc", "gc", "tnc", "normal" )

## Tool classes

class _TNCCurvature(Tool):
	def __init__(self):
		super().__init__(
			"tnccurvature",
			"Computes a curvature map (mean, Gaussian, total normal or directional normal curvature) of a grayscale image.",
			{}
		)

		self.addToolOptions()
		self.addCurvatureOptions()
		self.addFileOptions()

	def addCurvatureOptions(self):
		group = self.parser.add_argument_group("Curvature options")

		group.add_argument(
			"-k", "--kind",
			type    = str.lower,
			choices = CURVATURE_KINDS,
			default = "tnc",
			help    = "Curvature to compute (default tnc)"
		)
		group.add_argument(
			"-t", "--theta",
			type    = float,
			default = 0.0,
			help    = "Tangent direction in radians for --kind normal (default 0)",
			metavar = "radians"
		)
		group.add_argument(
			"-d", "--ndirs",
			type    = int,
			default = 8,
			help    = "Number of quadrature directions for --kind tnc (default 8)",
			metavar = "count"
		)
		group.add_argument(
			"-m", "--mesh-size",
			type    = float,
			default = 1.0,
			help    = "Grid spacing h (default 1)",
			metavar = "h"
		)

		return group

	def addFileOptions(self):
		group = self.parser.add_argument_group("File paths")

		group.add_argument(
			"inputFile",
			type = Path,
			help = "Path to input image (PNG, PGM or raw dump)"
		)
		group.add_argument(
			"outputPrefix",
			type = Path,
			help = "Output path without extension; {prefix}.raw and {prefix}.png are generated"
		)

		return group

	def run(self, args, properties):
		try:
			dirs  = DirectionSet(args.ndirs)
			image = loadImage(args.inputFile, args.mesh_size)
		except ValueError as err:
			raise ToolError(f"invalid input: {err}")

		match args.kind:
			case "mc":
				field = meanCurvatureMap(image)
			case "gc":
				field = gaussianCurvatureMap(image)
			case "tnc":
				field = tncMap(image, dirs)
			case "normal":
				field = normalCurvatureMap(image, args.theta)

		prefix = args.outputPrefix
		prefix.parent.mkdir(parents = True, exist_ok = True)

		saveRaw(prefix.with_name(f"{prefix.name}.raw"), field)
		saveImage(
			prefix.with_name(f"{prefix.name}.png"),
			ScalarField(field.spec, normalizeForDisplay(field))
		)

		logging.info(f"saved {args.kind} map of {args.inputFile.name} (range {field.values.min():.4g} to {field.values.max():.4g})")

## Exports

tnccurvature = _TNCCurvature()

if __name__ == "__main__":
	raise SystemExit(tnccurvature())
