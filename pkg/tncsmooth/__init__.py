# -*- coding: utf-8 -*-

"""Curvature-regularized image smoothing

TNCSmooth is a library and set of command-line tools for denoising grayscale
images with a total normal curvature + total variation model, minimized by an
operator-splitting scheme with FFT-based elliptic solvers.

See the project's README for more information.
"""

__version__ = "0.1.0"
__all__     = (
	"cli",
	"curvature",
	"grid",
	"image",
	"metrics",
	"solver",
	"spectral",
	"synth",
	"util"
)
