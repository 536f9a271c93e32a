# -*- coding: utf-8 -*-

"""Periodic grid fields and finite difference operators

This module defines the field containers (scalar, vector and 2x2 tensor valued)
used throughout the package as well as the discrete differential operators
acting on them. All operators assume periodic boundary conditions.

Index convention: axis 1 is the first array index (i, the "x" or x1 direction
of the model), axis 2 is the second index (j, "y" or x2). Values are stored
row-major as 64-bit floats. Fields are immutable snapshots; every operator
returns a new field.
"""

import numpy
from .util import CaseDict

## Grid description

class GridSpec:
	"""
	Shape and mesh size of a uniform periodic M x N grid.
	"""

	__slots__ = ( "rows", "cols", "h" )

	def __init__(self, rows, cols, h = 1.0):
		if int(rows) != rows or int(cols) != cols:
			raise ValueError("grid dimensions must be integers")
		if rows < 3 or cols < 3:
			raise ValueError(f"grid must be at least 3x3, got {rows}x{cols}")
		if not (h > 0) or not numpy.isfinite(h):
			raise ValueError(f"mesh size must be positive, got {h}")

		self.rows = int(rows)
		self.cols = int(cols)
		self.h    = float(h)

	@property
	def shape(self):
		return self.rows, self.cols

	@property
	def size(self):
		return self.rows * self.cols

	def __eq__(self, other):
		if not isinstance(other, GridSpec):
			return NotImplemented

		return \
			self.rows == other.rows and \
			self.cols == other.cols and \
			self.h    == other.h

	def __hash__(self):
		return hash(( self.rows, self.cols, self.h ))

	def __repr__(self):
		return f"GridSpec({self.rows}, {self.cols}, h = {self.h})"

## Exceptions

class NonFiniteError(ValueError):
	pass

class GridMismatchError(ValueError):
	pass

def checkSameGrid(*fields):
	"""
	Raises GridMismatchError if the given fields are not all defined on the
	same grid.
	"""

	spec = fields[0].spec

	for field in fields[1:]:
		if field.spec != spec:
			raise GridMismatchError(f"grid mismatch: {spec} vs {field.spec}")

	return spec

## Field containers

class _Field:
	COMPONENTS = ()

	def __init__(self, spec, *components):
		if len(components) != len(self.COMPONENTS):
			raise ValueError(f"{type(self).__name__} takes {len(self.COMPONENTS)} components")

		arrays = []

		for name, component in zip(self.COMPONENTS, components):
			array = numpy.array(component, numpy.float64)

			if array.shape != spec.shape:
				raise ValueError(f"component {name} has shape {array.shape}, expected {spec.shape}")
			if not numpy.isfinite(array).all():
				raise NonFiniteError(f"component {name} contains non-finite values")

			array.setflags(write = False)
			arrays.append(array)

		self.spec        = spec
		self._components = tuple(arrays)

	@property
	def components(self):
		return self._components

	def _combine(self, other, op):
		if isinstance(other, _Field):
			if type(other) is not type(self):
				return NotImplemented

			checkSameGrid(self, other)
			values = (
				op(a, b) for a, b in zip(self._components, other._components)
			)
		else:
			values = ( op(a, other) for a in self._components )

		return type(self)(self.spec, *values)

	def __add__(self, other):
		return self._combine(other, numpy.add)

	def __sub__(self, other):
		return self._combine(other, numpy.subtract)

	def __rsub__(self, other):
		return self._combine(other, lambda a, b: numpy.subtract(b, a))

	def __mul__(self, other):
		if isinstance(other, _Field):
			return NotImplemented

		return self._combine(other, numpy.multiply)

	__radd__ = __add__
	__rmul__ = __mul__

	def __neg__(self):
		return type(self)(self.spec, *( -a for a in self._components ))

	def maxAbs(self):
		return max(float(numpy.abs(a).max()) for a in self._components)

	def __repr__(self):
		return f"{type(self).__name__}({self.spec})"

class ScalarField(_Field):
	"""
	Real-valued function sampled on the grid (images, heights, level values).
	"""

	COMPONENTS = ( "values", )

	@classmethod
	def fromArray(cls, values, h = 1.0):
		values = numpy.asarray(values)
		if values.ndim != 2:
			raise ValueError("scalar field data must be 2-dimensional")

		return cls(GridSpec(*values.shape, h), values)

	@classmethod
	def constant(cls, spec, value = 0.0):
		return cls(spec, numpy.full(spec.shape, float(value)))

	@property
	def values(self):
		return self._components[0]

class VectorField(_Field):
	"""
	Two-component vector field, e.g. the gradient variable p.
	"""

	COMPONENTS = ( "comp1", "comp2" )

	@classmethod
	def zeros(cls, spec):
		return cls(spec, numpy.zeros(spec.shape), numpy.zeros(spec.shape))

	@property
	def comp1(self):
		return self._components[0]

	@property
	def comp2(self):
		return self._components[1]

	def norm(self):
		return numpy.hypot(self.comp1, self.comp2)

	def component(self, k):
		return ScalarField(self.spec, self._components[k - 1])

class TensorField(_Field):
	"""
	2x2 matrix field, e.g. the Hessian variable H. Row k holds the derivatives
	of the k-th vector component.
	"""

	COMPONENTS = ( "g11", "g12", "g21", "g22" )

	@classmethod
	def zeros(cls, spec):
		return cls(spec, *( numpy.zeros(spec.shape) for _ in range(4) ))

	@classmethod
	def fromVectorized(cls, spec, data):
		"""
		Builds a tensor field from an M x N x 4 array whose last axis holds
		vec(G) = [ g11, g12, g21, g22 ].
		"""

		return cls(spec, *numpy.moveaxis(data, -1, 0))

	g11 = property(lambda self: self._components[0])
	g12 = property(lambda self: self._components[1])
	g21 = property(lambda self: self._components[2])
	g22 = property(lambda self: self._components[3])

	def row(self, k):
		if k == 1:
			return VectorField(self.spec, self.g11, self.g12)
		if k == 2:
			return VectorField(self.spec, self.g21, self.g22)

		raise ValueError(f"invalid tensor row: {k}")

	def vectorize(self):
		return numpy.stack(self._components, -1)

## Shift and difference operators

def _checkAxis(axis):
	if axis not in ( 1, 2 ):
		raise ValueError(f"invalid axis: {axis}")

	return axis - 1

def shift(v, axis, offset = 1):
	"""
	Returns the periodically shifted field w(i, j) = v(i + offset, j) (axis 1)
	or w(i, j) = v(i, j + offset) (axis 2).
	"""

	return ScalarField(
		v.spec,
		numpy.roll(v.values, -offset, _checkAxis(axis))
	)

def diffForward(v, axis):
	_axis = _checkAxis(axis)

	return ScalarField(
		v.spec,
		(numpy.roll(v.values, -1, _axis) - v.values) / v.spec.h
	)

def diffBackward(v, axis):
	_axis = _checkAxis(axis)

	return ScalarField(
		v.spec,
		(v.values - numpy.roll(v.values, 1, _axis)) / v.spec.h
	)

def diffCentral(v, axis):
	_axis = _checkAxis(axis)

	return ScalarField(
		v.spec,
		(numpy.roll(v.values, -1, _axis) - numpy.roll(v.values, 1, _axis)) \
			/ (2 * v.spec.h)
	)

SCHEMES = CaseDict({
	"forward":  diffForward,
	"backward": diffBackward,
	"central":  diffCentral
})

def _getScheme(scheme):
	if scheme not in SCHEMES:
		raise ValueError(f"invalid difference scheme: {scheme}")

	return SCHEMES[scheme]

def grad(v, scheme = "forward"):
	diff = _getScheme(scheme)

	return VectorField(
		v.spec,
		diff(v, 1).values,
		diff(v, 2).values
	)

def div(q, scheme = "backward"):
	diff = _getScheme(scheme)

	return ScalarField(
		q.spec,
		diff(q.component(1), 1).values + diff(q.component(2), 2).values
	)

def gradVec(q, scheme = "backward"):
	"""
	Returns the gradient of a vector field as a tensor field; row k holds the
	gradient of component k.
	"""

	row1 = grad(q.component(1), scheme)
	row2 = grad(q.component(2), scheme)

	return TensorField(q.spec, row1.comp1, row1.comp2, row2.comp1, row2.comp2)

def laplacian(v):
	"""
	Returns the 5-point periodic Laplacian div^- grad^+ v.
	"""

	return div(grad(v, "forward"), "backward")

## Discrete Hessian

def discreteHessian(v, at):
	"""
	Evaluates the central second differences at grid point at = ( i, j ), with
	periodic wrap at the borders. Returns ( vxx, vyy, vxy ).
	"""

	data = v.values
	h2   = v.spec.h ** 2
	i, j = at

	M, N = v.spec.shape
	ip, im = (i + 1) % M, (i - 1) % M
	jp, jm = (j + 1) % N, (j - 1) % N

	vxx = (data[ip, j] - 2 * data[i, j] + data[im, j]) / h2
	vyy = (data[i, jp] - 2 * data[i, j] + data[i, jm]) / h2
	vxy = (data[ip, jp] - data[ip, jm] - data[im, jp] + data[im, jm]) / (4 * h2)

	return float(vxx), float(vyy), float(vxy)

def hessianMap(v):
	"""
	Field-wide version of discreteHessian(). Returns ( vxx, vyy, vxy ) as
	scalar fields.
	"""

	data = v.values
	h2   = v.spec.h ** 2

	up    = numpy.roll(data, -1, 0)
	down  = numpy.roll(data,  1, 0)
	right = numpy.roll(data, -1, 1)
	left  = numpy.roll(data,  1, 1)

	vxx = (up - 2 * data + down) / h2
	vyy = (right - 2 * data + left) / h2
	vxy = (
		numpy.roll(up,   -1, 1) - numpy.roll(up,   1, 1) -
		numpy.roll(down, -1, 1) + numpy.roll(down, 1, 1)
	) / (4 * h2)

	return (
		ScalarField(v.spec, vxx),
		ScalarField(v.spec, vyy),
		ScalarField(v.spec, vxy)
	)
