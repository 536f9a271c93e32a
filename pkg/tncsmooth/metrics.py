# -*- coding: utf-8 -*-

"""Image quality and convergence metrics

All metrics operate on two scalar fields defined on the same grid. SSIM uses
periodic (wrap-around) Gaussian filtering, so every metric here is invariant
under a simultaneous cyclic shift of both inputs.
"""

import math

import numpy
from scipy.ndimage import correlate
from .grid         import checkSameGrid

## Error norms

def psnr(u, ref, peak = 1.0):
	"""
	Returns the peak signal-to-noise ratio in dB, or math.inf if the fields are
	identical.
	"""

	checkSameGrid(u, ref)

	mse = float(numpy.mean((u.values - ref.values) ** 2))
	if mse == 0:
		return math.inf

	return 10 * math.log10(peak * peak / mse)

def l1Error(u, ref):
	"""
	Returns the unnormalized sum of absolute differences.
	"""

	checkSameGrid(u, ref)
	return float(numpy.abs(u.values - ref.values).sum())

def linfError(u, ref):
	checkSameGrid(u, ref)
	return float(numpy.abs(u.values - ref.values).max())

def relativeChange(uNext, uPrev):
	"""
	Returns ||uNext - uPrev||_2 / ||uNext||_2.
	"""

	checkSameGrid(uNext, uPrev)

	norm = float(numpy.linalg.norm(uNext.values))
	if norm == 0:
		raise ValueError("relative change of an all-zero iterate is undefined")

	return float(numpy.linalg.norm(uNext.values - uPrev.values)) / norm

## Structural similarity

class SsimParams:
	"""
	Parameters of the Gaussian-window SSIM index (11x11 window with standard
	deviation 1.5, K1 = 0.01, K2 = 0.03 and dynamic range 1 by default).
	"""

	def __init__(
		self,
		windowSize   = 11,
		sigma        = 1.5,
		k1           = 0.01,
		k2           = 0.03,
		dynamicRange = 1.0
	):
		if int(windowSize) != windowSize or windowSize < 1 or not (windowSize % 2):
			raise ValueError("SSIM window size must be a positive odd integer")
		if not (sigma > 0 and k1 > 0 and k2 > 0 and dynamicRange > 0):
			raise ValueError("SSIM sigma, k1, k2 and dynamic range must be positive")

		self.windowSize   = int(windowSize)
		self.sigma        = float(sigma)
		self.k1           = float(k1)
		self.k2           = float(k2)
		self.dynamicRange = float(dynamicRange)

	@property
	def window(self):
		offsets = numpy.arange(self.windowSize) - self.windowSize // 2
		profile = numpy.exp(-(offsets ** 2) / (2 * self.sigma ** 2))
		window  = numpy.outer(profile, profile)

		return window / window.sum()

	@property
	def c1(self):
		return (self.k1 * self.dynamicRange) ** 2

	@property
	def c2(self):
		return (self.k2 * self.dynamicRange) ** 2

def ssimMap(u, ref, params = None):
	checkSameGrid(u, ref)
	if params is None:
		params = SsimParams()

	window = params.window
	x, y   = u.values, ref.values

	def _filter(data):
		return correlate(data, window, mode = "grid-wrap")

	muX, muY = _filter(x), _filter(y)
	varX     = _filter(x * x) - muX * muX
	varY     = _filter(y * y) - muY * muY
	covXY    = _filter(x * y) - muX * muY

	return \
		((2 * muX * muY + params.c1) * (2 * covXY + params.c2)) / \
		((muX * muX + muY * muY + params.c1) * (varX + varY + params.c2))

def ssim(u, ref, params = None):
	"""
	Returns the mean SSIM index of two fields.
	"""

	return float(ssimMap(u, ref, params).mean())
