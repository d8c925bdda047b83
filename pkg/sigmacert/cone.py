"""
The open cone of characters certified by a witness.

A character y is covered by a witness when, for every table entry (x, image),
some vertex g' of x has y(g) > y(g') for all vertices g of the image. Only
exponent vectors matter, so the cone is described by strict inequalities
<delta, y> > 0 on differences of exponent vectors.
"""

import math
from fractions import Fraction

from .group import Character, validate_character
from .sigma_utils import display_simplex, format_rational


class ConeDescription(object):
    """
    Conjunction over table entries; each entry is a disjunction over vertices g'
    of the source simplex of conjunctions of strict inequalities <delta, y> > 0.
    """

    def __init__(self, generators, entries):
        """
        :param entries: list of (locus text, list of clauses), a clause being a tuple of delta vectors
        """
        self.generators = list(generators)
        self.entries = entries

    def contains(self, y):
        values = y.values if isinstance(y, Character) else tuple(Fraction(v) for v in y)
        for _, clauses in self.entries:
            if not any(all(sum(d * v for d, v in zip(delta, values)) > 0 for delta in clause)
                       for clause in clauses):
                return False
        return True

    def _delta_text(self, delta):
        terms = []
        for gen, d in zip(self.generators, delta):
            if d:
                terms.append(f"{'+' if d > 0 else '-'} {abs(d) if abs(d) != 1 else ''}{gen}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_text(self):
        lines = [f"cone over ({', '.join(self.generators)}): {len(self.entries)} conditions"]
        for locus, clauses in self.entries:
            if not clauses:
                lines.append(f"{locus}: never")
                continue
            parts = ["(" + " and ".join(f"{self._delta_text(d)} > 0" for d in clause) + ")" for clause in clauses]
            lines.append(f"{locus}: " + " or ".join(parts))
        return "\n".join(lines)


def cone_describe(witness, spec):
    """Inequality description of the characters for which the witness also works"""
    entries = []
    seen = set()
    for q, simplex, vertices in witness.image_entries():
        if not vertices:
            continue
        image_vectors = {spec.exponent_vector(g) for g in vertices}
        clauses = []
        for source in sorted({spec.exponent_vector(g) for g in simplex}):
            clause = tuple(sorted({tuple(a - b for a, b in zip(w, source)) for w in image_vectors}))
            if any(not any(delta) for delta in clause):
                # a zero difference can never be strictly positive
                continue
            if clause not in clauses:
                clauses.append(clause)
        key = frozenset(clauses)
        if key in seen:
            continue
        seen.add(key)
        entries.append((f"q={q} {display_simplex(simplex)}", sorted(clauses)))
    return ConeDescription(spec.generators, entries)


def cone_eval(witness, spec, y):
    """
    Exact amount u by which the witness raises the valuation of y, and whether y is
    in the certified cone (u > 0). u is +inf when the witness has no nonzero image.
    """
    if not isinstance(y, Character):
        y = validate_character(spec, y)
    else:
        validate_character(spec, y)
    value = math.inf
    for _, simplex, vertices in witness.image_entries():
        if not vertices:
            continue
        rise = min(y(g) for g in vertices) - min(y(g) for g in simplex)
        if rise < value:
            value = rise
    return value, value > 0


def format_cone_value(value):
    return "inf" if value == math.inf else format_rational(value)
