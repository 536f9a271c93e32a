# -*- coding: utf-8 -*-

"""Synthetic test patterns and noise

This module generates the two-level test images (line, square, rings, disk)
and the smooth test surfaces (bump, ripple) used to exercise the solver, as
well as seeded additive Gaussian noise.
"""

import logging

import numpy
from .grid import GridSpec, ScalarField
from .util import CaseDict

## Pattern description

PATTERN_KINDS = ( "line", "square", "rings", "disk", "bump", "ripple" )

# Geometry parameters and their defaults. Callables receive min(M, N).
PATTERN_GEOMETRY = CaseDict({
	"line":   { "barWidth":  lambda size: max(1, size // 7) },
	"square": { "inset":     lambda size: size // 4 },
	"rings":  { "ringRadii": lambda size: ( 0.12, 0.22, 0.32, 0.42 ) },
	"disk":   { "radius":    lambda size: 0.3 * size },
	"bump":   { "width":     lambda size: size / 6 },
	"ripple": { "periods":   lambda size: 2 }
})

class PatternSpec:
	"""
	Description of a synthetic pattern. Geometry parameters not given are
	filled in with defaults scaled to the grid size:

	- line:   barWidth (pixels) of a bar spanning all rows, centered along the
	          column axis
	- square: inset (pixels) of the foreground square from each border
	- rings:  ringRadii, four increasing fractions of min(M, N) bounding an
	          inner and an outer annulus
	- disk:   radius (pixels) of a centered disk
	- bump:   width (pixels, standard deviation) of a centered Gaussian bump
	- ripple: periods of a smooth periodic sinusoidal surface along each axis
	"""

	def __init__(
		self,
		kind,
		rows,
		cols,
		foreground = 1.0,
		background = 0.0,
		**geometry
	):
		kind = str(kind).strip().lower()
		if kind not in PATTERN_KINDS:
			raise ValueError(f"unknown pattern kind: {kind}")

		spec = GridSpec(rows, cols)

		for level in ( foreground, background ):
			if not (0 <= level <= 1):
				raise ValueError(f"pattern levels must be in [0, 1], got {level}")

		defaults = PATTERN_GEOMETRY[kind]

		for key in geometry:
			if key not in defaults:
				raise ValueError(f"invalid geometry parameter for {kind}: {key}")

		self.kind       = kind
		self.spec       = spec
		self.foreground = float(foreground)
		self.background = float(background)
		self.geometry   = {
			key: geometry.get(key, default(min(spec.shape)))
			for key, default in defaults.items()
		}

		self._validate()

	def _validate(self):
		size = min(self.spec.shape)

		match self.kind:
			case "line":
				width = self.geometry["barWidth"]

				if int(width) != width or not (1 <= width <= self.spec.cols):
					raise ValueError(f"invalid bar width: {width}")

			case "square":
				inset = self.geometry["inset"]

				if int(inset) != inset or inset < 0 or 2 * inset >= size:
					raise ValueError(f"invalid square inset: {inset}")

			case "rings":
				radii = tuple(self.geometry["ringRadii"])

				if \
					len(radii) != 4 or radii[0] <= 0 or radii[3] > 0.5 or \
					any(a >= b for a, b in zip(radii, radii[1:])):
					raise ValueError(f"ring radii must be 4 increasing fractions in (0, 0.5]: {radii}")

			case "disk":
				radius = self.geometry["radius"]

				if not (0 < radius <= size / 2):
					raise ValueError(f"invalid disk radius: {radius}")

			case "bump":
				if not (self.geometry["width"] > 0):
					raise ValueError("bump width must be positive")

			case "ripple":
				periods = self.geometry["periods"]

				if int(periods) != periods or periods < 1:
					raise ValueError("ripple periods must be a positive integer")

	def toProperties(self):
		geometry = {
			key: (list(value) if isinstance(value, tuple) else value)
			for key, value in self.geometry.items()
		}

		return {
			"kind":       self.kind,
			"rows":       self.spec.rows,
			"cols":       self.spec.cols,
			"foreground": self.foreground,
			"background": self.background,
			**geometry
		}

	@classmethod
	def fromProperties(cls, obj):
		obj = dict(obj)

		return cls(
			obj.pop("kind"),
			obj.pop("rows"),
			obj.pop("cols"),
			obj.pop("foreground", 1.0),
			obj.pop("background", 0.0),
			**obj
		)

	def __repr__(self):
		return f"PatternSpec({self.kind}, {self.spec.rows}x{self.spec.cols})"

## Pattern generation

def _centeredDistance(spec):
	i = numpy.arange(spec.rows) - (spec.rows - 1) / 2
	j = numpy.arange(spec.cols) - (spec.cols - 1) / 2

	return numpy.hypot(*numpy.meshgrid(i, j, indexing = "ij"))

def _makeMask(spec, kind, geometry):
	M, N = spec.shape
	size = min(M, N)

	match kind:
		case "line":
			width = int(geometry["barWidth"])
			start = (N - width) // 2
			mask  = numpy.zeros(spec.shape, bool)

			mask[:, start:start + width] = True
			return mask

		case "square":
			inset = int(geometry["inset"])
			mask  = numpy.zeros(spec.shape, bool)

			mask[inset:M - inset, inset:N - inset] = True
			return mask

		case "rings":
			r1, r2, r3, r4 = ( r * size for r in geometry["ringRadii"] )
			dist           = _centeredDistance(spec)

			return ((dist >= r1) & (dist <= r2)) | ((dist >= r3) & (dist <= r4))

		case "disk":
			return _centeredDistance(spec) <= geometry["radius"]

def makePattern(pattern):
	"""
	Generates the scalar field described by a PatternSpec.
	"""

	spec  = pattern.spec
	fg    = pattern.foreground
	bg    = pattern.background

	match pattern.kind:
		case "bump":
			dist  = _centeredDistance(spec)
			shape = numpy.exp(-(dist ** 2) / (2 * pattern.geometry["width"] ** 2))

		case "ripple":
			periods = int(pattern.geometry["periods"])
			zi      = 2 * numpy.pi * periods * numpy.arange(spec.rows) / spec.rows
			zj      = 2 * numpy.pi * periods * numpy.arange(spec.cols) / spec.cols
			shape   = 0.5 * (1 + numpy.outer(numpy.sin(zi), numpy.sin(zj)))

		case _:
			shape = _makeMask(spec, pattern.kind, pattern.geometry).astype(numpy.float64)

	logging.debug(f"generated {pattern}")
	return ScalarField(spec, bg + (fg - bg) * shape)

## Noise

def addGaussianNoise(f, sigma, seed = 0):
	"""
	Adds zero-mean i.i.d. Gaussian noise with standard deviation sigma, drawn
	from a PCG64 generator seeded with the given seed. Values are not clipped.
	"""

	if not (sigma >= 0):
		raise ValueError(f"noise standard deviation must be non-negative, got {sigma}")
	if sigma == 0:
		return ScalarField(f.spec, f.values)

	rng   = numpy.random.Generator(numpy.random.PCG64(int(seed)))
	noise = rng.normal(0.0, sigma, f.spec.shape)

	return ScalarField(f.spec, f.values + noise)
