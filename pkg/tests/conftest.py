# -*- coding: utf-8 -*-

import os

import numpy, pytest
from hypothesis import settings

from tncsmooth.grid import GridSpec, ScalarField, VectorField, TensorField

settings.register_profile("fast",     max_examples = 20,  deadline = None)
settings.register_profile("thorough", max_examples = 200, deadline = None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))

## Fixtures

@pytest.fixture
def rng():
	return numpy.random.Generator(numpy.random.PCG64(1234))

@pytest.fixture
def randomScalar(rng):
	def _make(rows = 8, cols = 8, h = 1.0, scale = 1.0):
		return ScalarField(GridSpec(rows, cols, h), scale * rng.standard_normal(( rows, cols )))

	return _make

@pytest.fixture
def randomVector(rng):
	def _make(rows = 8, cols = 8, h = 1.0, scale = 1.0):
		spec = GridSpec(rows, cols, h)

		return VectorField(spec, *( scale * rng.standard_normal(spec.shape) for _ in range(2) ))

	return _make

@pytest.fixture
def randomTensor(rng):
	def _make(rows = 8, cols = 8, h = 1.0, scale = 1.0):
		spec = GridSpec(rows, cols, h)

		return TensorField(spec, *( scale * rng.standard_normal(spec.shape) for _ in range(4) ))

	return _make
