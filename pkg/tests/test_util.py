# -*- coding: utf-8 -*-

import math

import pytest

from tncsmooth.util import parseText, parseJSON, parseKeyValue, toJSONValue, CaseDict

def test_parse_key_value():
	text = "\n".join((
		"# solver settings",
		"alpha = 0.1",
		"",
		"init_mode = \"smoothed\"  # quoted values are unescaped",
		"label = a=b"
	))

	assert parseKeyValue(text) == {
		"alpha":     "0.1",
		"init_mode": "smoothed",
		"label":     "a=b"
	}

def test_parse_key_value_rejects_bare_lines():
	with pytest.raises(ValueError):
		parseKeyValue("alpha 0.1\n")

def test_parse_json_with_comments():
	text = "{\n\t// solver\n\t\"alpha\": 0.2,\n\t\"beta\": 0 /* inline */\n}"
	assert parseJSON(text) == { "alpha": 0.2, "beta": 0 }

def test_parse_text_keeps_quoted_hashes():
	assert parseText("key = \"#1\" # comment").rstrip() == "key = \"#1\""

def test_case_dict():
	obj = CaseDict({ "Max_Outer": 10 })

	assert obj["max-outer"] == 10 and "MAX_OUTER" in obj
	assert list(obj) == [ "Max_Outer" ]

	obj["max_outer"] = 20
	assert dict(obj.items()) == { "max_outer": 20 }

	del obj["MAX-OUTER"]
	assert "max_outer" not in obj

def test_json_value_conversion():
	assert toJSONValue(math.inf) == "inf"
	assert toJSONValue(math.nan) == "nan"
	assert toJSONValue(1.5) == 1.5
	assert toJSONValue("text") == "text"
