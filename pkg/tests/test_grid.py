# -*- coding: utf-8 -*-

import numpy, pytest
from hypothesis            import given, settings
from hypothesis.strategies import integers, floats

from tncsmooth.grid import GridSpec, ScalarField, VectorField, TensorField, \
	NonFiniteError, GridMismatchError, checkSameGrid, shift, diffForward, \
	diffBackward, diffCentral, grad, div, gradVec, laplacian, discreteHessian, \
	hessianMap

def _randomScalar(seed, rows = 16, cols = 16, h = 1.0):
	rng = numpy.random.Generator(numpy.random.PCG64(seed))
	return ScalarField(GridSpec(rows, cols, h), rng.standard_normal(( rows, cols )))

def _randomVector(seed, rows = 16, cols = 16, h = 1.0):
	rng  = numpy.random.Generator(numpy.random.PCG64(seed))
	spec = GridSpec(rows, cols, h)

	return VectorField(spec, rng.standard_normal(spec.shape), rng.standard_normal(spec.shape))

def _ramp(spec, a = 1.0, b = 0.0):
	i, j = numpy.meshgrid(
		numpy.arange(spec.rows),
		numpy.arange(spec.cols),
		indexing = "ij"
	)

	return ScalarField(spec, (a * i + b * j) * spec.h)

def _fromDisplayedRows(rows):
	# Displayed 3x3 neighborhoods list x along each row and y down the rows,
	# whereas axis 1 (x) is the first array index.
	return ScalarField.fromArray(numpy.array(rows, numpy.float64).T)

## Grid and field containers

def test_grid_spec_validation():
	assert GridSpec(3, 3).shape == ( 3, 3 )
	assert GridSpec(4, 5, 0.5) == GridSpec(4, 5, 0.5)
	assert GridSpec(4, 5) != GridSpec(5, 4)

	for args in ( ( 2, 5 ), ( 5, 2 ), ( 5, 5, 0.0 ), ( 5, 5, -1.0 ), ( 4.5, 5 ) ):
		with pytest.raises(ValueError):
			GridSpec(*args)

def test_fields_reject_non_finite_values():
	spec   = GridSpec(3, 3)
	values = numpy.zeros(spec.shape)
	values[1, 2] = numpy.nan

	with pytest.raises(NonFiniteError):
		ScalarField(spec, values)
	with pytest.raises(NonFiniteError):
		VectorField(spec, numpy.zeros(spec.shape), numpy.full(spec.shape, numpy.inf))

def test_fields_are_immutable_snapshots():
	data  = numpy.ones(( 4, 4 ))
	field = ScalarField.fromArray(data)
	data[0, 0] = 5.0

	assert field.values[0, 0] == 1.0
	with pytest.raises(ValueError):
		field.values[0, 0] = 2.0

def test_grid_mismatch_is_detected():
	a = ScalarField.constant(GridSpec(4, 4))
	b = ScalarField.constant(GridSpec(4, 5))

	with pytest.raises(GridMismatchError):
		checkSameGrid(a, b)
	with pytest.raises(GridMismatchError):
		a + b

def test_field_arithmetic():
	spec = GridSpec(3, 4)
	a    = ScalarField.constant(spec, 2.0)
	b    = ScalarField.constant(spec, 0.5)

	assert numpy.all((a + b).values == 2.5)
	assert numpy.all((a - b).values == 1.5)
	assert numpy.all((3 * a).values == 6.0)
	assert numpy.all((-b).values == -0.5)

def test_scalar_minus_field(randomScalar, randomVector):
	u = randomScalar(5, 6)
	p = randomVector(5, 6)

	assert numpy.array_equal((0.5 - u).values, (-(u - 0.5)).values)
	assert numpy.array_equal((1 - p).comp1, 1 - p.comp1)
	assert numpy.array_equal((1 - p).comp2, 1 - p.comp2)
	assert type(1 - p) is type(p)

def test_tensor_vectorization():
	spec   = GridSpec(3, 3)
	tensor = TensorField(spec, *( numpy.full(spec.shape, float(k)) for k in range(4) ))
	data   = tensor.vectorize()

	assert data.shape == ( 3, 3, 4 )
	assert numpy.all(data[1, 2] == [ 0, 1, 2, 3 ])
	assert numpy.array_equal(TensorField.fromVectorized(spec, data).g21, tensor.g21)
	assert numpy.array_equal(tensor.row(2).comp1, tensor.g21)

## Difference operators

def test_diff_of_constant_is_zero():
	field = ScalarField.constant(GridSpec(5, 6), 0.7)

	for op in ( diffForward, diffBackward, diffCentral ):
		for axis in ( 1, 2 ):
			assert numpy.all(op(field, axis).values == 0)

def test_diff_forward_wraps_at_last_row():
	spec  = GridSpec(6, 4, 0.5)
	field = _ramp(spec)
	diff  = diffForward(field, 1).values

	assert numpy.allclose(diff[:-1], 1.0)
	assert numpy.allclose(diff[-1], 1 - spec.rows)

def test_diff_backward_wraps_at_first_row():
	spec = GridSpec(6, 4)
	diff = diffBackward(_ramp(spec), 1).values

	assert numpy.allclose(diff[1:], 1.0)
	assert numpy.allclose(diff[0], 1 - spec.rows)

def test_diff_forward_matches_loop(randomScalar):
	field = randomScalar(4, 4, 0.25)
	data  = field.values
	M, N  = field.spec.shape

	for axis in ( 1, 2 ):
		result = diffForward(field, axis).values

		for i in range(M):
			for j in range(N):
				if axis == 1:
					expected = (data[(i + 1) % M, j] - data[i, j]) / 0.25
				else:
					expected = (data[i, (j + 1) % N] - data[i, j]) / 0.25

				assert result[i, j] == pytest.approx(expected, abs = 1e-12)

def test_second_difference_stencil(randomScalar):
	field  = randomScalar(5, 5)
	data   = field.values
	result = diffBackward(diffForward(field, 1), 1).values

	expected = numpy.roll(data, -1, 0) - 2 * data + numpy.roll(data, 1, 0)
	assert numpy.allclose(result, expected, atol = 1e-12)

def test_shift_convention():
	field = _ramp(GridSpec(4, 4))

	assert shift(field, 1).values[0, 0] == field.values[1, 0]
	assert shift(field, 2, -1).values[0, 0] == field.values[0, 3]

def test_gradient_of_ramp():
	spec  = GridSpec(6, 7)
	field = _ramp(spec, 1.0, 2.0)
	g     = grad(field, "forward")

	assert numpy.allclose(g.comp1[:-1, :-1], 1.0)
	assert numpy.allclose(g.comp2[:-1, :-1], 2.0)

def test_grad_vec_of_linear_field_is_identity():
	spec  = GridSpec(6, 6)
	field = VectorField(spec, _ramp(spec, 1, 0).values, _ramp(spec, 0, 1).values)
	G     = gradVec(field, "forward")

	assert numpy.allclose(G.g11[:-1, :-1], 1)
	assert numpy.allclose(G.g12[:-1, :-1], 0)
	assert numpy.allclose(G.g21[:-1, :-1], 0)
	assert numpy.allclose(G.g22[:-1, :-1], 1)

def test_grad_vec_rows_are_component_gradients(randomVector):
	q = randomVector()
	G = gradVec(q, "backward")

	for k in ( 1, 2 ):
		expected = grad(q.component(k), "backward")

		assert numpy.array_equal(G.row(k).comp1, expected.comp1)
		assert numpy.array_equal(G.row(k).comp2, expected.comp2)

def test_invalid_scheme_and_axis():
	field = ScalarField.constant(GridSpec(3, 3))

	with pytest.raises(ValueError):
		grad(field, "upwind")
	with pytest.raises(ValueError):
		diffForward(field, 3)

def test_laplacian_is_five_point_stencil(randomScalar):
	field = randomScalar(7, 9, 0.5)
	data  = field.values

	expected = (
		numpy.roll(data, 1, 0) + numpy.roll(data, -1, 0) +
		numpy.roll(data, 1, 1) + numpy.roll(data, -1, 1) - 4 * data
	) / 0.25

	assert numpy.allclose(laplacian(field).values, expected, atol = 1e-12)

@settings(max_examples = 50)
@given(integers(0, 2 ** 32 - 1), floats(0.1, 4.0))
def test_adjointness(seed, h):
	v = _randomScalar(seed, h = h)
	q = _randomVector(seed + 1, h = h)

	lhs = numpy.sum(grad(v, "forward").comp1 * q.comp1 + grad(v, "forward").comp2 * q.comp2)
	rhs = -numpy.sum(v.values * div(q, "backward").values)

	assert lhs == pytest.approx(rhs, rel = 1e-12, abs = 1e-12)

@given(integers(0, 2 ** 32 - 1), integers(-5, 5), integers(-5, 5))
def test_translation_equivariance(seed, s, t):
	v = _randomScalar(seed, 8, 10)

	def _roll(field):
		return ScalarField(field.spec, numpy.roll(field.values, ( s, t ), ( 0, 1 )))

	for op in ( diffForward, diffBackward, diffCentral ):
		for axis in ( 1, 2 ):
			assert numpy.allclose(op(_roll(v), axis).values, _roll(op(v, axis)).values, atol = 1e-12)

@given(integers(0, 2 ** 32 - 1), floats(-3, 3), floats(-3, 3))
def test_linearity(seed, a, b):
	u = _randomScalar(seed, 6, 6)
	v = _randomScalar(seed + 1, 6, 6)

	combined = laplacian(a * u + b * v).values
	expected = a * laplacian(u).values + b * laplacian(v).values

	assert numpy.allclose(combined, expected, atol = 1e-11)

## Discrete Hessian

def test_hessian_step_edge_pattern():
	field = _fromDisplayedRows([ [ 0, 1, 1 ], [ 0, 1, 1 ], [ 0, 1, 1 ] ])
	vxx, vyy, vxy = discreteHessian(field, ( 1, 1 ))

	assert ( vxx, vyy, vxy ) == ( -1.0, 0.0, 0.0 )
	assert vxx * vyy - vxy * vxy == 0

def test_hessian_diagonal_ramp_pattern():
	field = _fromDisplayedRows([ [ 0, 0, 0.5 ], [ 0, 0.5, 1 ], [ 0.5, 1, 1 ] ])
	vxx, vyy, vxy = discreteHessian(field, ( 1, 1 ))

	assert ( vxx, vyy, vxy ) == ( 0.0, 0.0, 0.0 )

def test_hessian_corner_pattern():
	field = _fromDisplayedRows([ [ 0, 0, 1 ], [ 0, 1, 1 ], [ 1, 1, 1 ] ])
	vxx, vyy, vxy = discreteHessian(field, ( 1, 1 ))

	assert ( vxx, vyy, vxy ) == ( -1.0, -1.0, -0.25 )
	assert vxx * vyy - vxy * vxy == pytest.approx(15 / 16)

def test_hessian_map_matches_pointwise(randomScalar):
	field = randomScalar(5, 6, 0.5)
	maps  = hessianMap(field)

	for i in range(5):
		for j in range(6):
			pointwise = discreteHessian(field, ( i, j ))

			for value, fieldMap in zip(pointwise, maps):
				assert fieldMap.values[i, j] == pytest.approx(value, abs = 1e-12)
