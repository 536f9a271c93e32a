# -*- coding: utf-8 -*-

"""Periodic elliptic solvers

The linear subproblems of the splitting scheme are constant-coefficient
elliptic equations on a periodic grid, which the discrete Fourier transform
diagonalizes. Each equation is described by a real spectral symbol of the form

	s(i, j) = constant + diffusion * (4 - 2 cos z_i - 2 cos z_j)

with z_i = 2 pi (i - 1) / M and z_j = 2 pi (j - 1) / N, and solved by dividing
the transformed right hand side by the symbol.
"""

import logging
from functools import lru_cache

import numpy
from .grid import ScalarField, checkSameGrid

## Symbols

@lru_cache(maxsize = 32)
def _frequencyTerm(spec):
	zi = 2 * numpy.pi * numpy.arange(spec.rows) / spec.rows
	zj = 2 * numpy.pi * numpy.arange(spec.cols) / spec.cols

	term = numpy.add.outer(2 - 2 * numpy.cos(zi), 2 - 2 * numpy.cos(zj))
	term.setflags(write = False)

	return term

class SpectralSymbol:
	"""
	Per-frequency coefficients of a periodic operator
	constant * I - diffusion * (second differences along both axes), along with
	the parameters it was built from.
	"""

	def __init__(self, spec, constant, diffusion, name = "symbol"):
		self.spec      = spec
		self.constant  = float(constant)
		self.diffusion = float(diffusion)
		self.name      = name

		coefficients = self.constant + self.diffusion * _frequencyTerm(spec)
		coefficients.setflags(write = False)

		self.coefficients = coefficients

	def isPositive(self):
		return bool((self.coefficients > 0).all())

	def apply(self, v):
		"""
		Applies the spatial operator this symbol diagonalizes, i.e.
		constant * v - diffusion * [ (S1+ - I)(I - S1-) + (S2+ - I)(I - S2-) ] v.
		"""

		checkSameGrid(v, self)
		data = v.values

		secondDiff = \
			numpy.roll(data, -1, 0) + numpy.roll(data, 1, 0) + \
			numpy.roll(data, -1, 1) + numpy.roll(data, 1, 1) - 4 * data

		return ScalarField(
			v.spec,
			self.constant * data - self.diffusion * secondDiff
		)

	def __repr__(self):
		return f"SpectralSymbol({self.name}, {self.spec}, constant = {self.constant}, diffusion = {self.diffusion})"

def _checkPositive(**params):
	for name, value in params.items():
		if not (value > 0):
			raise ValueError(f"{name} must be positive, got {value}")

def buildSymbolA(spec, eta):
	"""
	Symbol of the p^{n+3/4} update: a = eta h^2 + 4 - 2 cos z_i - 2 cos z_j.
	"""

	_checkPositive(eta = eta)
	return SpectralSymbol(spec, eta * spec.h ** 2, 1.0, "a")

def buildSymbolB(spec, eta, gamma, tau):
	"""
	Symbol of the u^{n+1} update:
	b = gamma tau h^2 + 4 eta - 2 eta cos z_i - 2 eta cos z_j.
	"""

	_checkPositive(eta = eta, gamma = gamma, tau = tau)
	return SpectralSymbol(spec, gamma * tau * spec.h ** 2, eta, "b")

def buildSymbolC(spec, epsilon):
	"""
	Symbol of the smoothed initialization:
	c = h^2 + 4 eps - 2 eps cos z_i - 2 eps cos z_j.
	"""

	_checkPositive(epsilon = epsilon)
	return SpectralSymbol(spec, spec.h ** 2, epsilon, "c")

## Transforms and solver

def forwardTransform(v):
	return numpy.fft.fft2(v.values)

def inverseTransform(spec, coefficients):
	"""
	Returns the real part of the inverse transform as a scalar field, along
	with the discarded imaginary residue (max-norm).
	"""

	data = numpy.fft.ifft2(coefficients)
	return ScalarField(spec, data.real), float(numpy.abs(data.imag).max())

def solvePeriodic(rhs, symbol):
	"""
	Solves the periodic equation whose symbol is given, returning
	Re[F^-1(F(rhs) / symbol)].
	"""

	spec = checkSameGrid(rhs, symbol)
	if not symbol.isPositive():
		raise ValueError(f"symbol {symbol.name} has non-positive entries")

	solution, residue = inverseTransform(
		spec,
		forwardTransform(rhs) / symbol.coefficients
	)

	scale = float(numpy.abs(solution.values).max())
	if residue > 1e-10 * max(scale, 1e-300):
		logging.debug(f"imaginary residue {residue:.3e} discarded (solution max {scale:.3e})")

	return solution
