# -*- coding: utf-8 -*-

"""Image file I/O

This module converts between grayscale image files and scalar fields with
values normalized to [0, 1]. Supported formats are PNG (8 or 16 bits per
pixel), PGM and anything else Pillow reads, plus a raw float64 dump that
preserves values exactly. PGM samples are rescaled by Pillow from the header's
maxval to the full 8 or 16-bit range.
"""

import logging
from struct  import Struct
from pathlib import Path

import numpy
from PIL   import Image
from .grid import ScalarField

## Raw float dump

# Header: rows, cols (little endian), followed by row-major float64 samples.
RAW_HEADER_STRUCT = Struct("< 2I")

def saveRaw(path, field):
	with Path(path).open("wb") as _file:
		_file.write(RAW_HEADER_STRUCT.pack(*field.spec.shape))
		_file.write(field.values.astype("<f8").tobytes())

def loadRaw(path, h = 1.0):
	with Path(path).open("rb") as _file:
		data = _file.read()

	if len(data) < RAW_HEADER_STRUCT.size:
		raise ValueError(f"{path} is too short to be a raw field dump")

	rows, cols = RAW_HEADER_STRUCT.unpack_from(data)
	body       = data[RAW_HEADER_STRUCT.size:]

	if len(body) != rows * cols * 8:
		raise ValueError(f"{path} has {len(body)} data bytes, expected {rows * cols * 8}")

	values = numpy.frombuffer(body, "<f8").reshape(( rows, cols ))
	return ScalarField.fromArray(values, h)

## Pillow formats

# 16-bit samples go through Pillow's 32-bit integer mode, which both PNG and
# PGM save as 16 bits per pixel.
_IMAGE_BITS = {
	8:  numpy.uint8,
	16: numpy.int32
}

def _quantize(field, bits):
	if bits not in _IMAGE_BITS:
		raise ValueError(f"unsupported bit depth: {bits}")

	values   = field.values
	clipped  = numpy.count_nonzero((values < 0) | (values > 1))
	maxValue = (1 << bits) - 1

	if clipped:
		logging.info(f"clipping {clipped} samples outside [0, 1]")

	return numpy.rint(numpy.clip(values, 0, 1) * maxValue).astype(numpy.int64)

def _fromPillowImage(image, h):
	match image.mode:
		case "I;16" | "I;16B" | "I;16L" | "I":
			scale = 0xffff
			data  = numpy.array(image, numpy.float64)
		case "F":
			scale = 1.0
			data  = numpy.array(image, numpy.float64)
		case "L":
			scale = 0xff
			data  = numpy.array(image, numpy.float64)
		case _:
			if image.mode not in ( "1", "P", "LA" ):
				logging.warning(f"converting {image.mode} image to grayscale")

			scale = 0xff
			data  = numpy.array(image.convert("L"), numpy.float64)

	return ScalarField.fromArray(data / scale, h)

def loadImage(path, h = 1.0):
	"""
	Loads a grayscale image as a scalar field with values in [0, 1]. The
	format is chosen according to the file extension: .raw dumps are read
	directly, anything else (including PGM) goes through Pillow.
	"""

	path = Path(path)

	if path.suffix.lower() == ".raw":
		return loadRaw(path, h)

	with Image.open(path, "r") as image:
		image.load()
		return _fromPillowImage(image, h)

def saveImage(path, field, bits = 16):
	"""
	Saves a scalar field as an image, clipping values to [0, 1]. 16-bit depth
	is used unless bits = 8 is passed; .raw files store the unclipped values.
	"""

	path = Path(path)

	if path.suffix.lower() == ".raw":
		return saveRaw(path, field)

	data = _quantize(field, bits).astype(_IMAGE_BITS[bits])

	Image.fromarray(data).save(path)
