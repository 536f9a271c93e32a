# -*- coding: utf-8 -*-

import math
from pathlib import Path

from ..grid    import checkSameGrid, GridMismatchError
from ..image   import loadImage
from ..metrics import SsimParams, psnr, ssim, l1Error, linfError
from .common   import Tool, ToolError, printValues

## Tool classes

class _TNCMetrics(Tool):
	def __init__(self):
		super().__init__(
			"tncmetrics",
			"Prints PSNR, SSIM and error norms between two grayscale images.",
			{
				"peak":          1.0,
				"window_size":   11,
				"sigma":         1.5,
				"k1":            0.01,
				"k2":            0.03,
				"dynamic_range": 1.0
			}
		)

		self.addToolOptions()
		self.addConfigOptions()
		self.addFileOptions()

	def addFileOptions(self):
		group = self.parser.add_argument_group("File paths")

		group.add_argument(
			"inputFile",
			type = Path,
			help = "Path to image to be evaluated"
		)
		group.add_argument(
			"referenceFile",
			type = Path,
			help = "Path to reference image"
		)

		return group

	def run(self, args, properties):
		try:
			image     = loadImage(args.inputFile)
			reference = loadImage(args.referenceFile)
			params    = SsimParams(
				properties["window_size"],
				properties["sigma"],
				properties["k1"],
				properties["k2"],
				properties["dynamic_range"]
			)

			checkSameGrid(image, reference)
		except GridMismatchError:
			raise ToolError(f"dimension mismatch: {image.spec.shape} vs {reference.spec.shape}")
		except (TypeError, ValueError) as err:
			raise ToolError(f"invalid input: {err}")

		value = psnr(image, reference, properties["peak"])

		printValues({
			"psnr": "inf" if math.isinf(value) else f"{value:.6f}",
			"ssim": f"{ssim(image, reference, params):.6f}",
			"l1":   f"{l1Error(image, reference):.6g}",
			"linf": f"{linfError(image, reference):.6g}"
		})

## Exports

tncmetrics = _TNCMetrics()

if __name__ == "__main__":
	raise SystemExit(tncmetrics())
