# -*- coding: utf-8 -*-

"""Command-line tools for curvature-regularized image smoothing

Each module in this package defines a single tool (tncdenoise, tnccurvature,
tncsynth, tncmetrics) as a Tool subclass instance.

See the project's README for more information.
"""

__version__ = "0.1.0"
__all__     = (
	"common",
	"curvature",
	"denoise",
	"metrics",
	"synth"
)
