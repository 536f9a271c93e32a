# -*- coding: utf-8 -*-

"""Total normal curvature smoothing solver

This module implements the operator-splitting minimizer of the energy

	J(u) = alpha / 2 * sum TNC integrand(H, grad u) + beta * sum |grad u|
	     + gamma / 2 * sum (f - u)^2

where the curvature term penalizes |t^T H t| / (1 + (grad u . t)^2) over all
tangent directions t. The auxiliary variables p ~ grad u and H ~ grad p are
evolved by a four-step Lie splitting scheme per outer iteration:

1. a relaxed fixed-point iteration for p and a per-pixel ADMM solve for H
   (curvature term),
2. vector shrinkage of p (total variation term),
3. a periodic elliptic solve coupling p and H,
4. a periodic elliptic solve reconstructing u from p (fidelity term).

Steps 3 and 4 are solved in the frequency domain (see spectral.py).
"""

import math, time, logging
from contextlib import contextmanager

import numpy
from .grid      import ScalarField, VectorField, TensorField, NonFiniteError, \
	checkSameGrid, grad, div, gradVec, hessianMap
from .spectral  import buildSymbolA, buildSymbolB, buildSymbolC, solvePeriodic
from .curvature import DirectionSet
from .metrics   import relativeChange
from .util      import CaseDict

## Exceptions

class ConvergenceError(RuntimeError):
	"""
	Raised when the fixed-point iteration of step 1 does not reach its
	tolerance within the iteration cap. The last iterate is preserved so that
	callers may accept it.
	"""

	def __init__(self, message, iterate, residual, iterations):
		super().__init__(message)

		self.iterate    = iterate
		self.residual   = residual
		self.iterations = iterations

class SolverAbortError(RuntimeError):
	"""
	Raised when a fractional step produces non-finite values.
	"""

	def __init__(self, message, step, iteration):
		super().__init__(message)

		self.step      = step
		self.iteration = iteration

## Configuration

INIT_MODES = ( "direct", "smoothed" )

# Property name: ( attribute name, type, default value )
SOLVER_PROPERTIES = CaseDict({
	"alpha":         ( "alpha",        float, 0.1 ),
	"beta":          ( "beta",         float, 0.4 ),
	"gamma":         ( "gamma",        float, 10.0 ),
	"eta":           ( "eta",          float, 1.0 ),
	"tau":           ( "tau",          float, 0.01 ),
	"rho1":          ( "rho1",         float, 0.8 ),
	"rho2":          ( "rho2",         float, 0.5 ),
	"fp_tol":        ( "fpTol",        float, 1e-5 ),
	"fp_max_iter":   ( "fpMaxIter",    int,   500 ),
	"admm_tol":      ( "admmTol",      float, 1e-5 ),
	"i_max":         ( "iMax",         int,   1 ),
	"n_dirs":        ( "nDirs",        int,   8 ),
	"stop_eps":      ( "stopEps",      float, 1e-5 ),
	"max_outer":     ( "maxOuter",     int,   2000 ),
	"init_mode":     ( "initMode",     str,   "direct" ),
	"init_epsilon":  ( "initEpsilon",  float, 1.0 ),
	"energy_stride": ( "energyStride", int,   1 ),
	"log_interval":  ( "logInterval",  int,   50 )
})

def _toInt(value):
	if isinstance(value, str):
		value = float(value)
	if int(value) != value:
		raise ValueError(f"expected an integer, got {value}")

	return int(value)

_CONVERTERS = {
	float: float,
	int:   _toInt,
	str:   lambda value: str(value).strip().lower()
}

class SolverConfig:
	"""
	Model and algorithm parameters of the solver, validated at construction.
	Attributes use the camelCase names listed in SOLVER_PROPERTIES; property
	dictionaries (files, manifests) use the snake_case keys.
	"""

	def __init__(self, **options):
		for key in options:
			if key not in self._attributeNames():
				raise ValueError(f"unknown solver option: {key}")

		for name, _type, default in SOLVER_PROPERTIES.values():
			value = options.get(name, default)

			try:
				setattr(self, name, _CONVERTERS[_type](value))
			except (TypeError, ValueError):
				raise ValueError(f"invalid value for {name}: {value!r}")

		self._validate()

	@staticmethod
	def _attributeNames():
		return { name for name, _, _ in SOLVER_PROPERTIES.values() }

	def _validate(self):
		def _require(condition, message):
			if not condition:
				raise ValueError(message)

		_require(self.alpha >= 0, f"alpha must be non-negative, got {self.alpha}")
		_require(self.beta  >= 0, f"beta must be non-negative, got {self.beta}")

		for name in ( "gamma", "eta", "tau", "rho2", "fpTol", "admmTol", "stopEps", "initEpsilon" ):
			value = getattr(self, name)
			_require(value > 0 and math.isfinite(value), f"{name} must be positive, got {value}")

		for name in ( "fpMaxIter", "iMax", "maxOuter", "energyStride" ):
			value = getattr(self, name)
			_require(value >= 1, f"{name} must be at least 1, got {value}")

		_require(0 < self.rho1 <= 1, f"rho1 must be in (0, 1], got {self.rho1}")
		_require(
			self.nDirs >= 2 and not (self.nDirs % 2),
			f"n_dirs must be an even integer >= 2, got {self.nDirs}"
		)
		_require(self.initMode in INIT_MODES, f"invalid init mode: {self.initMode}")
		_require(self.logInterval >= 0, "log_interval must be non-negative")

	@classmethod
	def fromProperties(cls, properties):
		"""
		Builds a configuration from a (case-insensitive) property dictionary,
		ignoring keys that are not solver properties.
		"""

		options = {}

		for key, value in properties.items():
			if key in SOLVER_PROPERTIES:
				options[SOLVER_PROPERTIES[key][0]] = value

		return cls(**options)

	def toProperties(self):
		return {
			key: getattr(self, name)
			for key, ( name, _, _ ) in SOLVER_PROPERTIES.items()
		}

	def replace(self, **changes):
		options = {
			name: getattr(self, name) for name in self._attributeNames()
		}
		options.update(changes)

		return SolverConfig(**options)

	def __eq__(self, other):
		if not isinstance(other, SolverConfig):
			return NotImplemented

		return self.toProperties() == other.toProperties()

	def __repr__(self):
		values = ", ".join(f"{key} = {value}" for key, value in self.toProperties().items())
		return f"SolverConfig({values})"

## Solver state and reports

class SolverState:
	"""
	Iterates ( u, p, H ) of the splitting scheme plus the ADMM multipliers
	(an M x N x L array, L = n_dirs / 2) and the iteration histories.
	"""

	def __init__(
		self,
		u,
		p,
		H,
		multipliers,
		iteration     = 0,
		energyHistory = (),
		relerrHistory = (),
		initialEnergy = None
	):
		checkSameGrid(u, p, H)

		multipliers = numpy.array(multipliers, numpy.float64)
		if multipliers.shape[:2] != u.spec.shape:
			raise ValueError("multiplier field does not match the grid")
		if not numpy.isfinite(multipliers).all():
			raise NonFiniteError("multiplier field contains non-finite values")
		if len(energyHistory) != iteration or len(relerrHistory) != iteration:
			raise ValueError("history lengths must match the iteration count")

		multipliers.setflags(write = False)

		self.u             = u
		self.p             = p
		self.H             = H
		self.multipliers   = multipliers
		self.iteration     = iteration
		self.energyHistory = tuple(energyHistory)
		self.relerrHistory = tuple(relerrHistory)
		self.initialEnergy = initialEnergy

	@property
	def spec(self):
		return self.u.spec

class IterationReport:
	"""
	Per-iteration statistics. wallTime is the time elapsed since the start of
	the run, in seconds.
	"""

	CSV_HEADER = "iter,energy,relative_change,wall_time_s"

	def __init__(
		self,
		iteration,
		energy,
		relativeChange,
		fpIters     = 0,
		admmIters   = 0,
		hNorm1      = 0.0,
		fpConverged = True,
		wallTime    = 0.0
	):
		if not (relativeChange >= 0):
			raise ValueError("relative change must be non-negative")

		self.iteration      = iteration
		self.energy         = energy
		self.relativeChange = relativeChange
		self.fpIters        = fpIters
		self.admmIters      = admmIters
		self.hNorm1         = hNorm1
		self.fpConverged    = fpConverged
		self.wallTime       = wallTime

	def toCSVRow(self):
		return f"{self.iteration},{self.energy!r},{self.relativeChange!r},{self.wallTime:.6f}"

	def __repr__(self):
		return f"IterationReport({self.iteration}, energy = {self.energy:.6e}, change = {self.relativeChange:.3e})"

## Proximal operators

def shrinkage(a, b):
	"""
	Soft-thresholding max(|a| - b, 0) * a / |a| (zero where a = 0).
	"""

	return numpy.sign(a) * numpy.maximum(numpy.abs(a) - b, 0)

## Solver

@contextmanager
def _guardStep(step, iteration):
	try:
		yield
	except NonFiniteError as err:
		raise SolverAbortError(
			f"non-finite values in step {step} at iteration {iteration}: {err}",
			step,
			iteration
		) from err

class TNCSolver:
	"""
	Operator-splitting solver for the TNC + TV + fidelity model. The solver
	object holds the configuration and the per-configuration precomputed data
	(direction sets, ADMM system inverse, spectral symbols per grid).
	"""

	def __init__(self, config = None):
		self.config = config or SolverConfig()
		self.dirs   = DirectionSet(self.config.nDirs)

		# The curvature term is pi-periodic in theta, so ADMM works on the
		# first half of the directions with doubled weight:
		# C = (tau alpha / 2) * (2 pi / n_dirs) * 2.
		angles, rows = self.dirs.half()

		self._admmTangents = self.dirs.tangents[:len(angles)]
		self._admmMatrix   = rows
		self._admmWeight   = 2 * numpy.pi * self.config.tau * self.config.alpha \
			/ self.config.nDirs
		self._admmInverse  = numpy.linalg.inv(
			numpy.eye(4) + self.config.rho2 * (rows.T @ rows)
		)

		self._symbols = {}

		self.lastFixedPoint = ( 0, 0.0 )
		self.lastADMM       = ( 0, 0.0, 0.0 )
		self.state          = None

	def _getSymbols(self, spec):
		if spec not in self._symbols:
			cfg = self.config

			self._symbols[spec] = (
				buildSymbolA(spec, cfg.eta),
				buildSymbolB(spec, cfg.eta, cfg.gamma, cfg.tau)
			)

		return self._symbols[spec]

	def _multiplierShape(self, spec):
		return ( *spec.shape, self._admmMatrix.shape[0] )

	## Initialization

	def initializeDirect(self, f):
		p0 = grad(f, "forward")
		H0 = gradVec(p0, "backward")

		return p0, H0

	def initializeSmoothed(self, f, epsilon = None):
		"""
		Smooths f by solving u0 - eps * laplacian(u0) = f, then derives p0 and
		H0 from u0.
		"""

		if epsilon is None:
			epsilon = self.config.initEpsilon

		rhs    = ScalarField(f.spec, f.spec.h ** 2 * f.values)
		u0     = solvePeriodic(rhs, buildSymbolC(f.spec, epsilon))
		p0, H0 = self.initializeDirect(u0)

		return u0, p0, H0

	def initialState(self, f):
		"""
		Returns the state at n = 0: u0 = f, ( p0, H0 ) from the configured
		initialization mode and zero ADMM multipliers.
		"""

		with _guardStep("init", 0):
			if self.config.initMode == "smoothed":
				_, p0, H0 = self.initializeSmoothed(f)
			else:
				p0, H0 = self.initializeDirect(f)

		return SolverState(
			ScalarField(f.spec, f.values),
			p0,
			H0,
			numpy.zeros(self._multiplierShape(f.spec)),
			initialEnergy = self.energy(f, f)
		)

	## Fractional steps

	def stepFixedPoint(self, pN, hN):
		"""
		Computes p^{n+1/4} by the relaxed fixed-point iteration
		q~ = q0 + (tau alpha / eta) * quadrature of F(q, theta),
		q <- q + rho1 * (q~ - q), stopping when max |q_{k+1} - q_k| <= fp_tol.
		"""

		cfg = self.config
		checkSameGrid(pN, hN)

		tangents = self.dirs.tangents
		bending  = numpy.abs(hN.vectorize() @ self.dirs.rows.T)
		coef     = cfg.tau * cfg.alpha / cfg.eta * self.dirs.weight

		q0 = numpy.stack(pN.components, -1)
		q  = q0

		for iteration in range(1, cfg.fpMaxIter + 1):
			slope  = q @ tangents.T
			force  = bending * slope / (1 + slope * slope) ** 2
			target = q0 + coef * (force @ tangents)

			step     = cfg.rho1 * (target - q)
			q        = q + step
			residual = float(numpy.abs(step).max())

			if residual <= cfg.fpTol:
				break
		else:
			self.lastFixedPoint = ( cfg.fpMaxIter, residual )

			raise ConvergenceError(
				f"fixed-point iteration did not converge in {cfg.fpMaxIter} iterations (residual {residual:.3e})",
				VectorField(pN.spec, q[..., 0], q[..., 1]),
				residual,
				cfg.fpMaxIter
			)

		self.lastFixedPoint = ( iteration, residual )
		return VectorField(pN.spec, q[..., 0], q[..., 1])

	def stepADMM(self, hN, pQuarter, multipliers):
		"""
		Computes H^{n+1/4} by running up to i_max ADMM iterations on the
		per-pixel problem
		min_w 1/2 |w - b|^2 + C * sum_l Delta_l |a_l . w|, b = vec(H^n),
		warm-started with the multipliers of the previous outer iteration.
		Returns the new tensor field and the updated multipliers.
		"""

		cfg = self.config
		checkSameGrid(hN, pQuarter)

		A, K = self._admmMatrix, self._admmInverse
		rho  = cfg.rho2

		slope     = numpy.stack(pQuarter.components, -1) @ self._admmTangents.T
		threshold = self._admmWeight / (1 + slope * slope) / rho

		b   = hN.vectorize()
		w   = b
		u   = w @ A.T
		lam = numpy.array(multipliers, numpy.float64)

		primal, dual = 0.0, 0.0

		for iteration in range(1, cfg.iMax + 1):
			w  = (b - lam @ A + rho * (u @ A)) @ K.T
			Aw = w @ A.T

			uNext = shrinkage(Aw + lam / rho, threshold)
			lam   = lam + rho * (Aw - uNext)

			primal = float(numpy.linalg.norm(Aw - uNext, axis = -1).max())
			dual   = float(numpy.linalg.norm(rho * ((uNext - u) @ A), axis = -1).max())
			u      = uNext

			if primal <= cfg.admmTol and dual <= cfg.admmTol:
				break

		if not numpy.isfinite(lam).all():
			raise NonFiniteError("ADMM multipliers contain non-finite values")

		self.lastADMM = ( iteration, primal, dual )
		return TensorField.fromVectorized(hN.spec, w), lam

	def stepShrink(self, pQuarter):
		"""
		Computes p^{n+2/4} = max(0, 1 - (tau beta / eta) / |p|) * p.
		"""

		cfg       = self.config
		threshold = cfg.tau * cfg.beta / cfg.eta

		norm   = pQuarter.norm()
		safe   = numpy.where(norm > 0, norm, 1)
		factor = numpy.where(norm > threshold, 1 - threshold / safe, 0)

		return VectorField(
			pQuarter.spec,
			factor * pQuarter.comp1,
			factor * pQuarter.comp2
		)

	def stepElliptic(self, pHalf, hHalf):
		"""
		Computes p^{n+3/4} by solving, for k = 1, 2,
		[ eta h^2 I - (S1+ - I)(I - S1-) - (S2+ - I)(I - S2-) ] p_k = g_k with
		g_k = eta h^2 p_k^{n+2/4} - h^2 div^+(row k of H^{n+2/4}), then sets
		H^{n+3/4} = grad^- p^{n+3/4}.
		"""

		spec    = checkSameGrid(pHalf, hHalf)
		symbolA = self._getSymbols(spec)[0]
		h2      = spec.h ** 2
		eta     = self.config.eta

		components = []

		for k in ( 1, 2 ):
			rhs = ScalarField(
				spec,
				eta * h2 * pHalf.components[k - 1] -
				h2 * div(hHalf.row(k), "forward").values
			)
			components.append(solvePeriodic(rhs, symbolA).values)

		pNext = VectorField(spec, *components)
		return pNext, gradVec(pNext, "backward")

	def stepReconstruct(self, pThreeQuarter, f):
		"""
		Computes u^{n+1} from
		[ gamma tau h^2 I - eta (second differences) ] u = gamma tau h^2 f
		- eta h^2 div^- p^{n+3/4}, and returns ( u^{n+1}, grad^+ u^{n+1} ).
		"""

		spec    = checkSameGrid(pThreeQuarter, f)
		symbolB = self._getSymbols(spec)[1]
		cfg     = self.config
		h2      = spec.h ** 2

		rhs = ScalarField(
			spec,
			cfg.gamma * cfg.tau * h2 * f.values -
			cfg.eta * h2 * div(pThreeQuarter, "backward").values
		)

		u = solvePeriodic(rhs, symbolB)
		return u, grad(u, "forward")

	## Energy

	def energy(self, u, f):
		"""
		Evaluates the discrete energy, using forward differences for grad u and
		central second differences for the Hessian. Each pixel is weighted by
		h^2.
		"""

		spec = checkSameGrid(u, f)
		cfg  = self.config
		h2   = spec.h ** 2

		gradient = grad(u, "forward")
		gx, gy   = gradient.components

		total = cfg.gamma / 2 * h2 * float(numpy.sum((f.values - u.values) ** 2))

		if cfg.beta:
			total += cfg.beta * h2 * float(numpy.sum(gradient.norm()))

		if cfg.alpha:
			vxx, vyy, vxy = ( field.values for field in hessianMap(u) )
			curvature     = numpy.zeros(spec.shape)

			for ( c, s ) in self.dirs.tangents:
				bending    = vxx * c * c + 2 * vxy * c * s + vyy * s * s
				slope      = gx * c + gy * s
				curvature += numpy.abs(bending) / (1 + slope * slope)

			total += cfg.alpha / 2 * h2 * self.dirs.weight * float(numpy.sum(curvature))

		return total

	## Outer loop

	def iterate(self, state, f):
		"""
		Runs one outer iteration (steps 1-4) and returns the new state along
		with its IterationReport (wallTime is left at zero).
		"""

		cfg       = self.config
		iteration = state.iteration + 1

		p, H, multipliers = state.p, state.H, state.multipliers

		fpIters, admmIters, fpConverged = 0, 0, True

		# A zero weight reduces the model to TV (alpha) or pure curvature
		# (beta) regularization; the corresponding step is skipped.
		if cfg.alpha > 0:
			with _guardStep(1, iteration):
				try:
					pQuarter = self.stepFixedPoint(p, H)
				except ConvergenceError as err:
					logging.warning(f"iteration {iteration}: {err}, accepting last iterate")

					pQuarter    = err.iterate
					fpConverged = False

				hQuarter, multipliers = self.stepADMM(H, pQuarter, multipliers)

			fpIters   = self.lastFixedPoint[0]
			admmIters = self.lastADMM[0]
		else:
			pQuarter, hQuarter = p, H

		if cfg.beta > 0:
			with _guardStep(2, iteration):
				pHalf = self.stepShrink(pQuarter)
		else:
			pHalf = pQuarter

		with _guardStep(3, iteration):
			pThreeQuarter, hThreeQuarter = self.stepElliptic(pHalf, hQuarter)
		with _guardStep(4, iteration):
			u, pNext = self.stepReconstruct(pThreeQuarter, f)

		change = self._relativeChange(u, state.u)

		if not (iteration % cfg.energyStride) or change <= cfg.stopEps:
			energy = self.energy(u, f)
		else:
			energy = math.nan

		hNorm1 = float(numpy.abs(hQuarter.vectorize()).sum())

		logging.debug(f"iteration {iteration}: fixed-point {fpIters}, ADMM {admmIters}")

		nextState = SolverState(
			u,
			pNext,
			hThreeQuarter,
			multipliers,
			iteration,
			state.energyHistory + ( energy, ),
			state.relerrHistory + ( change, ),
			state.initialEnergy
		)
		report = IterationReport(
			iteration,
			energy,
			change,
			fpIters,
			admmIters,
			hNorm1,
			fpConverged
		)

		return nextState, report

	@staticmethod
	def _relativeChange(uNext, uPrev):
		try:
			return relativeChange(uNext, uPrev)
		except ValueError:
			# All-zero iterate: only a zero previous iterate counts as converged.
			return 0.0 if not numpy.any(uPrev.values) else math.inf

	def run(self, f, callback = None):
		"""
		Runs the splitting scheme on the image f until the relative change of u
		drops below stop_eps or max_outer iterations are reached. Returns the
		final u and the list of IterationReports; the final state is kept in
		the state attribute.
		"""

		cfg = self.config

		if f.values.min() < 0 or f.values.max() > 1:
			logging.debug("input values are outside [0, 1]")

		start   = time.perf_counter()
		state   = self.initialState(f)
		reports = []

		logging.info(f"starting on {f.spec}, initial energy {state.initialEnergy:.6e}")

		while state.iteration < cfg.maxOuter:
			state, report = self.iterate(state, f)

			report.wallTime = time.perf_counter() - start
			reports.append(report)

			if callback:
				callback(report)
			if cfg.logInterval and not (state.iteration % cfg.logInterval):
				logging.info(f"iteration {state.iteration}: energy {report.energy:.6e}, change {report.relativeChange:.3e}")

			if report.relativeChange <= cfg.stopEps:
				logging.info(f"converged after {state.iteration} iterations")
				break
		else:
			logging.warning(f"stopped after {cfg.maxOuter} iterations without converging")

		self.state = state
		return state.u, reports

def run(f, config = None, callback = None):
	"""
	Convenience wrapper around TNCSolver(config).run(f).
	"""

	return TNCSolver(config).run(f, callback)
