"""
Module with useful utilities.
"""

import json
import hashlib
from fractions import Fraction

import yaml


def parse_rational(value):
    """
    Converts an integer, a Fraction or a string "p/q" (or "p") to a Fraction.
    Raises ValueError for anything else, floats included.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if text and all(c in "0123456789+-/" for c in text):
            try:
                return Fraction(text)
            except (ValueError, ZeroDivisionError):
                pass
    raise ValueError(f"not a rational number: {value!r}")


def format_rational(value):
    """Exact text form of a rational: "p/q", or "p" for integers"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def display_word(word):
    return word if word else "1"


def display_simplex(simplex):
    return "(" + ", ".join(display_word(w) for w in simplex) + ")"


def canonical_json(data):
    """JSON text with sorted keys, so that equal data always gives equal bytes"""
    return json.dumps(data, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def sha256_hex(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def load_yaml(path, what="file"):
    """
    Reads a YAML (or JSON) document into Python data.
    Raises ValueError if there was a parsing error.
    """
    with open(path, "r") as stream:
        try:
            return yaml.safe_load(stream)
        except yaml.YAMLError as exc:
            raise ValueError(f"Unable to parse {what} YAML:\n" + str(exc))
