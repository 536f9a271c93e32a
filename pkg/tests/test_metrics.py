# -*- coding: utf-8 -*-

import math

import numpy, pytest

from tncsmooth.grid    import GridSpec, ScalarField, GridMismatchError
from tncsmooth.metrics import SsimParams, psnr, ssim, ssimMap, l1Error, \
	linfError, relativeChange
from tncsmooth.synth   import PatternSpec, makePattern, addGaussianNoise

def _shifted(field, s = 3, t = -2):
	return ScalarField(field.spec, numpy.roll(field.values, ( s, t ), ( 0, 1 )))

## Error norms

def test_psnr_identical_is_infinite(randomScalar):
	field = randomScalar()
	assert psnr(field, field) == math.inf

def test_psnr_of_uniform_offset():
	spec = GridSpec(10, 10)
	ref  = ScalarField.constant(spec, 0.3)

	assert psnr(ref + 0.1, ref) == pytest.approx(20.0)

def test_psnr_matches_loop(randomScalar):
	u, ref = randomScalar(6, 5, scale = 0.1), randomScalar(6, 5, scale = 0.1)
	total  = 0.0

	for i in range(6):
		for j in range(5):
			total += (u.values[i, j] - ref.values[i, j]) ** 2

	assert psnr(u, ref) == pytest.approx(10 * math.log10(1 / (total / 30)))

def test_psnr_decreases_with_noise():
	ref    = makePattern(PatternSpec("disk", 40, 40))
	values = [ psnr(addGaussianNoise(ref, sigma, 7), ref) for sigma in ( 0.01, 0.05, 0.1 ) ]

	assert values[0] > values[1] > values[2]

def test_error_norms():
	spec   = GridSpec(4, 4)
	ref    = ScalarField.constant(spec, 0.5)
	values = numpy.full(spec.shape, 0.5)
	values[2, 1] = 0.7

	u = ScalarField(spec, values)

	assert l1Error(ref, ref) == 0 and linfError(ref, ref) == 0
	assert l1Error(u, ref) == pytest.approx(0.2)
	assert linfError(u, ref) == pytest.approx(0.2)

def test_error_norms_match_loop(randomScalar):
	u, ref = randomScalar(5, 7), randomScalar(5, 7)
	diffs  = [
		abs(u.values[i, j] - ref.values[i, j])
		for i in range(5)
		for j in range(7)
	]

	assert l1Error(u, ref) == pytest.approx(sum(diffs))
	assert linfError(u, ref) == max(diffs)

def test_relative_change():
	spec = GridSpec(3, 3)
	u    = ScalarField.constant(spec, 2.0)

	assert relativeChange(u, u) == 0
	assert relativeChange(u, ScalarField.constant(spec)) == pytest.approx(1.0)

	with pytest.raises(ValueError):
		relativeChange(ScalarField.constant(spec), u)

def test_relative_change_matches_loop(randomScalar):
	u, v = randomScalar(4, 4), randomScalar(4, 4)

	numerator   = math.sqrt(sum((a - b) ** 2 for a, b in zip(u.values.flat, v.values.flat)))
	denominator = math.sqrt(sum(a ** 2 for a in u.values.flat))

	assert relativeChange(u, v) == pytest.approx(numerator / denominator)

def test_metrics_reject_mismatched_grids(randomScalar):
	a, b = randomScalar(8, 8), randomScalar(8, 9)

	for metric in ( psnr, ssim, l1Error, linfError, relativeChange ):
		with pytest.raises(GridMismatchError):
			metric(a, b)

## Structural similarity

def test_ssim_params():
	params = SsimParams()

	assert params.window.shape == ( 11, 11 )
	assert params.window.sum() == pytest.approx(1.0)
	assert params.c1 == pytest.approx(1e-4)
	assert params.c2 == pytest.approx(9e-4)

	with pytest.raises(ValueError):
		SsimParams(windowSize = 10)
	with pytest.raises(ValueError):
		SsimParams(k1 = 0)

def test_ssim_of_identical_fields(randomScalar):
	field = randomScalar(20, 20)
	assert ssim(field, field) == pytest.approx(1.0)

def test_ssim_is_symmetric(randomScalar):
	a, b = randomScalar(16, 16), randomScalar(16, 16)
	assert ssim(a, b) == pytest.approx(ssim(b, a), abs = 1e-12)

def test_ssim_of_constant_fields():
	spec   = GridSpec(16, 16)
	params = SsimParams()
	x, y   = 0.25, 0.75

	expected = (2 * x * y + params.c1) / (x * x + y * y + params.c1)
	value    = ssim(ScalarField.constant(spec, x), ScalarField.constant(spec, y), params)

	assert value == pytest.approx(expected, rel = 1e-9)

def test_ssim_is_bounded(randomScalar):
	a, b   = randomScalar(16, 16), randomScalar(16, 16)
	values = ssimMap(a, b)

	assert numpy.all(values <= 1 + 1e-12) and numpy.all(values >= -1 - 1e-12)

def test_metrics_are_shift_invariant(randomScalar):
	a, b = randomScalar(16, 16), randomScalar(16, 16)

	for metric in ( psnr, ssim, l1Error, linfError ):
		assert metric(_shifted(a), _shifted(b)) == pytest.approx(metric(a, b), rel = 1e-10)
