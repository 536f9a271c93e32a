# -*- coding: utf-8 -*-

import logging, time
from pathlib import Path

from ..grid    import ScalarField, checkSameGrid
from ..image   import loadImage, saveImage, saveRaw
from ..metrics import psnr, ssim, l1Error, linfError
from ..solver  import SolverConfig, TNCSolver, IterationReport
from ..synth   import PATTERN_KINDS, PatternSpec, makePattern, addGaussianNoise
from ..util    import parseJSON
from .common   import DEFAULT_SOLVER_PROPERTIES, Tool, ToolError, writeJSON, \
	printValues

MANIFEST_VERSION = 1

# Flag destination: ( property name, type, metavar )
SOLVER_FLAGS = {
	"alpha":    ( "alpha",        float, "value" ),
	"beta":     ( "beta",         float, "value" ),
	"gamma":    ( "gamma",        float, "value" ),
	"tau":      ( "tau",          float, "value" ),
	"eta":      ( "eta",          float, "value" ),
	"rho1":     ( "rho1",         float, "value" ),
	"rho2":     ( "rho2",         float, "value" ),
	"imax":     ( "i_max",        int,   "count" ),
	"ndirs":    ( "n_dirs",       int,   "count" ),
	"tol":      ( "stop_eps",     float, "value" ),
	"max-iter": ( "max_outer",    int,   "count" ),
	"init":     ( "init_mode",    str,   "direct|smoothed" ),
	"init-eps": ( "init_epsilon", float, "value" )
}

## Tool classes

class _TNCDenoise(Tool):
	def __init__(self):
		super().__init__(
			"tncdenoise",
			"Denoises a grayscale image (or a synthetic test pattern) using total normal curvature regularization.",
			DEFAULT_SOLVER_PROPERTIES
		)

		self.addToolOptions()
		self.addConfigOptions()
		self.addSolverOptions()
		self.addInputOptions()
		self.addFileOptions()

	def addSolverOptions(self):
		group = self.parser.add_argument_group("Solver options (override properties)")

		for flag, ( key, _type, metavar ) in SOLVER_FLAGS.items():
			group.add_argument(
				f"--{flag}",
				type    = _type,
				dest    = f"solver_{key}",
				help    = f"Set the {key} property",
				metavar = metavar
			)

		return group

	def addInputOptions(self):
		group = self.parser.add_argument_group("Input options")

		group.add_argument(
			"-P", "--pattern",
			type    = str.lower,
			choices = PATTERN_KINDS,
			help    = "Generate a synthetic pattern instead of loading an input image"
		)
		group.add_argument(
			"-z", "--size",
			type    = int,
			nargs   = 2,
			default = ( 60, 60 ),
			help    = "Size of the synthetic pattern (default 60x60)",
			metavar = ( "rows", "cols" )
		)
		group.add_argument(
			"-n", "--sigma",
			type    = float,
			default = 0.0,
			help    = "Standard deviation of Gaussian noise to add to the input (default 0)",
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
			"-m", "--mesh-size",
			type    = float,
			default = 1.0,
			help    = "Grid spacing h (default 1)",
			metavar = "h"
		)
		group.add_argument(
			"-r", "--reference",
			type    = Path,
			help    = "Clean reference image to compute PSNR/SSIM against (defaults to the clean pattern for synthetic inputs)",
			metavar = "file"
		)
		group.add_argument(
			"-R", "--replay",
			type    = Path,
			help    = "Re-run a denoise from the manifest written by a previous run (other input and solver options are ignored)",
			metavar = "manifest"
		)

		return group

	def addFileOptions(self):
		group = self.parser.add_argument_group("File paths")

		group.add_argument(
			"inputFile",
			type  = Path,
			nargs = "?",
			help  = "Path to input image (PNG, PGM or raw dump)"
		)
		group.add_argument(
			"outputDir",
			type = Path,
			help = "Directory to write the denoised image, history and manifest to"
		)
		group.add_argument(
			"-b", "--bits",
			type    = int,
			choices = ( 8, 16 ),
			default = 16,
			help    = "Bit depth of saved PNG images (default 16)"
		)
		group.add_argument(
			"-w", "--raw",
			action = "store_true",
			help   = "Also save the denoised image as a raw float64 dump"
		)

		return group

	## Input handling

	def _getRequest(self, args, properties):
		if args.replay:
			try:
				manifest = parseJSON(args.replay.read_text())
			except ValueError as err:
				raise ToolError(f"failed to parse manifest {args.replay}: {err}")

			try:
				return {
					"input":      manifest["input"],
					"noise":      manifest["noise"],
					"meshSize":   manifest["meshSize"],
					"properties": manifest["properties"],
					"reference":  manifest.get("reference"),
					"bits":       manifest.get("bits", args.bits),
					"raw":        manifest.get("raw", args.raw)
				}
			except (KeyError, TypeError) as err:
				raise ToolError(f"incomplete manifest {args.replay}: {err}")

		if (args.inputFile is None) == (args.pattern is None):
			self.parser.error("exactly one of an input file or --pattern must be given")

		for key in SOLVER_FLAGS.values():
			value = getattr(args, f"solver_{key[0]}")

			if value is not None:
				properties[key[0]] = value

		if args.pattern:
			try:
				pattern = PatternSpec(args.pattern, *args.size)
			except ValueError as err:
				self.parser.error(str(err))

			source = { "pattern": pattern.toProperties() }
		else:
			source = { "path": str(args.inputFile) }

		return {
			"input":      source,
			"noise":      { "sigma": args.sigma, "seed": args.seed },
			"meshSize":   args.mesh_size,
			"properties": dict(properties.items()),
			"reference":  str(args.reference) if args.reference else None,
			"bits":       args.bits,
			"raw":        args.raw
		}

	def _loadInput(self, request):
		source = request["input"]
		h      = float(request["meshSize"])

		try:
			if "pattern" in source:
				pattern = makePattern(PatternSpec.fromProperties(source["pattern"]))
				clean   = ScalarField.fromArray(pattern.values, h)
				f       = clean
			else:
				clean = None
				f     = loadImage(source["path"], h)

			noise = request["noise"]
			noisy = addGaussianNoise(f, float(noise["sigma"]), int(noise["seed"]))

			if request["reference"]:
				clean = loadImage(request["reference"], h)
				checkSameGrid(clean, noisy)
		except OSError:
			raise
		except (KeyError, TypeError, ValueError) as err:
			raise ToolError(f"invalid input: {err}")

		return noisy, clean

	## Main

	def run(self, args, properties):
		request = self._getRequest(args, properties)

		try:
			config = SolverConfig.fromProperties(request["properties"])
		except ValueError as err:
			self.parser.error(str(err))

		noisy, clean = self._loadInput(request)
		outputDir    = args.outputDir
		artifacts    = []

		logging.info(f"denoising {noisy.spec} with {config}")

		start      = time.perf_counter()
		solver     = TNCSolver(config)
		u, reports = solver.run(noisy)
		wallTime   = time.perf_counter() - start

		# Nothing is written until the solver has finished.
		outputDir.mkdir(parents = True, exist_ok = True)

		if request["noise"]["sigma"] > 0:
			saveImage(outputDir / "noisy.png", noisy, request["bits"])
			artifacts.append("noisy.png")

		saveImage(outputDir / "denoised.png", u, request["bits"])
		artifacts.append("denoised.png")

		if request["raw"]:
			saveRaw(outputDir / "denoised.raw", u)
			artifacts.append("denoised.raw")

		with (outputDir / "history.csv").open("wt") as _file:
			_file.write(IterationReport.CSV_HEADER + "\n")

			for report in reports:
				_file.write(report.toCSVRow() + "\n")

		artifacts.append("history.csv")

		metrics = None
		if clean is not None:
			metrics = {
				"psnr":       psnr(u, clean),
				"ssim":       ssim(u, clean),
				"l1":         l1Error(u, clean),
				"linf":       linfError(u, clean),
				"psnr_noisy": psnr(noisy, clean)
			}

			printValues(metrics)

		artifacts.append("manifest.json")
		writeJSON(outputDir / "manifest.json", {
			"version":         MANIFEST_VERSION,
			"input":           request["input"],
			"noise":           request["noise"],
			"meshSize":        noisy.spec.h,
			"properties":      config.toProperties(),
			"reference":       request["reference"],
			"bits":            request["bits"],
			"raw":             request["raw"],
			"outputDirectory": str(outputDir),
			"artifacts":       artifacts,
			"history":         "history.csv",
			"iterations":      len(reports),
			"initialEnergy":   solver.state.initialEnergy,
			"finalEnergy":     reports[-1].energy if reports else None,
			"wallTime":        wallTime,
			"metrics":         metrics
		})

		logging.info(f"saved {len(artifacts)} files to {outputDir}")

## Exports

tncdenoise = _TNCDenoise()

if __name__ == "__main__":
	raise SystemExit(tncdenoise())
