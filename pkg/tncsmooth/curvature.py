# -*- coding: utf-8 -*-

"""Surface curvature measures

This module computes curvature quantities of the height field surface
(x, y, v(x, y)): normal curvature along a tangent direction, mean and Gaussian
curvature and the total normal curvature (TNC), i.e. the integral of the
absolute normal curvature over all directions.

The pointwise functions take a gradient tuple ( v_x, v_y ) and a Hessian tuple
( v_xx, v_xy, v_yy ) of floats or NumPy arrays. The *Map() functions evaluate
them on a whole field, using central differences for first derivatives and
the central second differences of grid.hessianMap() for second derivatives.
"""

import numpy
from .grid import ScalarField, diffCentral, hessianMap

## Direction sets

class DirectionSet:
	"""
	Uniformly spaced quadrature angles theta_l = 2 pi (l - 1) / count on
	[0, 2 pi), with their unit tangents t(theta_l) = ( cos, sin ) and the
	vectorized rows a_l = [ cos^2, cos sin, cos sin, sin^2 ] (so that
	t^T G t = a_l . vec(G)).
	"""

	def __init__(self, count = 8):
		if int(count) != count or count < 1:
			raise ValueError(f"direction count must be a positive integer, got {count}")

		self.count  = int(count)
		self.angles = 2 * numpy.pi * numpy.arange(self.count) / self.count

		cos, sin = numpy.cos(self.angles), numpy.sin(self.angles)

		self.tangents = numpy.stack(( cos, sin ), -1)
		self.rows     = numpy.stack(( cos * cos, cos * sin, cos * sin, sin * sin ), -1)

		for array in ( self.angles, self.tangents, self.rows ):
			array.setflags(write = False)

	@property
	def weight(self):
		"""
		Rectangle rule weight 2 pi / count.
		"""

		return 2 * numpy.pi / self.count

	def half(self):
		"""
		Returns the first count / 2 directions, which cover [0, pi). Since
		t^T G t is pi-periodic in theta, these are enough to represent every
		term of the full set.
		"""

		if self.count % 2:
			raise ValueError("direction count must be even to be halved")

		return self.angles[:self.count // 2], self.rows[:self.count // 2]

	def __len__(self):
		return self.count

	def __repr__(self):
		return f"DirectionSet({self.count})"

## Pointwise quantities

class FundamentalForms:
	"""
	Coefficients of the first ( E, F, G ) and second ( L, M, N ) fundamental
	forms of the graph surface.
	"""

	def __init__(self, E, F, G, L, M, N):
		self.E, self.F, self.G = E, F, G
		self.L, self.M, self.N = L, M, N

	def first(self, t1, t2):
		return self.E * t1 * t1 + 2 * self.F * t1 * t2 + self.G * t2 * t2

	def second(self, t1, t2):
		return self.L * t1 * t1 + 2 * self.M * t1 * t2 + self.N * t2 * t2

def _areaElement(vx, vy):
	return numpy.sqrt(1 + vx * vx + vy * vy)

def fundamentalForms(grad, hess):
	vx, vy        = grad
	vxx, vxy, vyy = hess
	W             = _areaElement(vx, vy)

	return FundamentalForms(
		1 + vx * vx,
		vx * vy,
		1 + vy * vy,
		vxx / W,
		vxy / W,
		vyy / W
	)

def normalCurvature(grad, hess, theta):
	"""
	Returns the normal curvature II / I along the direction theta.
	"""

	vx, vy        = grad
	vxx, vxy, vyy = hess
	cos, sin      = numpy.cos(theta), numpy.sin(theta)

	numerator = vxx * cos * cos + 2 * vxy * cos * sin + vyy * sin * sin
	slope     = vx * cos + vy * sin

	return numerator / (_areaElement(vx, vy) * (1 + slope * slope))

def meanCurvature(grad, hess):
	vx, vy        = grad
	vxx, vxy, vyy = hess
	W             = _areaElement(vx, vy)

	return (
		(1 + vx * vx) * vyy - 2 * vx * vy * vxy + (1 + vy * vy) * vxx
	) / (2 * W ** 3)

def gaussianCurvature(grad, hess):
	vx, vy        = grad
	vxx, vxy, vyy = hess

	return (vxx * vyy - vxy * vxy) / (1 + vx * vx + vy * vy) ** 2

def totalNormalCurvature(grad, hess, dirs):
	"""
	Rectangle rule quadrature of |kappa_n| over the direction set.
	"""

	total = 0

	for theta in dirs.angles:
		total = total + numpy.abs(normalCurvature(grad, hess, theta))

	return dirs.weight * total

## Field-wide maps

def _derivatives(v):
	vxx, vyy, vxy = hessianMap(v)

	grad = ( diffCentral(v, 1).values, diffCentral(v, 2).values )
	hess = ( vxx.values, vxy.values, vyy.values )

	return grad, hess

def normalCurvatureMap(v, theta):
	return ScalarField(v.spec, normalCurvature(*_derivatives(v), theta))

def meanCurvatureMap(v):
	return ScalarField(v.spec, meanCurvature(*_derivatives(v)))

def gaussianCurvatureMap(v):
	return ScalarField(v.spec, gaussianCurvature(*_derivatives(v)))

def tncMap(v, dirs = None):
	if dirs is None:
		dirs = DirectionSet()

	return ScalarField(v.spec, totalNormalCurvature(*_derivatives(v), dirs))

def tangentTurning(profile, h = 1.0):
	"""
	Returns the total variation of the tangent angle arctan(v') of a 1-D
	profile, i.e. the discrete total absolute curvature of the curve
	(x, v(x)). Differences are not wrapped.
	"""

	profile = numpy.asarray(profile, numpy.float64)
	if profile.ndim != 1 or profile.size < 3:
		raise ValueError("profile must be 1-dimensional with at least 3 samples")

	angles = numpy.arctan(numpy.diff(profile) / h)
	return float(numpy.abs(numpy.diff(angles)).sum())

## Display helpers

def normalizeForDisplay(field):
	"""
	Affinely maps the range [min, max] of a field to [0, 1] and returns the
	result as an array. Constant fields map to zero.
	"""

	data     = field.values
	low, top = data.min(), data.max()

	if top <= low:
		return numpy.zeros(data.shape)

	return (data - low) / (top - low)
