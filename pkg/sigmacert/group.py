"""
Finitely generated groups given by a shortlex-complete rewriting system.

Group elements are handled as their normal forms: plain strings over the
generators (single lower-case letters) and their inverses (the same letter in
upper case). The empty string is the identity and is displayed as "1".

Letters are ordered a < A < b < B < ... following the order in which the
generators are declared, and shortlex order is built on top of that.
"""

import re
import threading
from fractions import Fraction

from .sigma_utils import (
    canonical_json,
    display_word,
    format_rational,
    load_yaml,
    parse_rational,
    sha256_hex,
)

IDENTITY = ""

TEMPLATE_NAMES = "Zn, Fn, products like F2xZ1, BS(1,n)"


class GroupSpecError(ValueError):
    pass


class CharacterError(ValueError):
    pass


def formal_inverse(word):
    """Reversed word with every letter inverted (not reduced)"""
    return word.swapcase()[::-1]


class GroupSpec(object):
    """ Generators and rewriting rules of a group, with the word problem solved by rewriting """

    def __init__(self, generators, rules, presentation_only=False, name=None):
        """
        :param generators: list of distinct single lower-case letters
        :param rules: list of (lhs, rhs) word pairs, each with rhs shortlex-smaller than lhs
        :param presentation_only: rules are kept as a presentation only; they need not be
            confluent and metric operations are refused
        :param name: optional human-readable name (e.g. template name)
        """
        self.generators = list(generators)
        self.name = name
        self.presentation_only = bool(presentation_only)

        if not self.generators:
            raise GroupSpecError("group spec needs at least one generator")
        for gen in self.generators:
            if not isinstance(gen, str) or len(gen) != 1 or not gen.islower() or not gen.isalpha():
                raise GroupSpecError(f"generator must be a single lower-case letter: {gen!r}")
        if len(set(self.generators)) != len(self.generators):
            raise GroupSpecError("generators must be distinct")

        self.symbols = []
        for gen in self.generators:
            self.symbols += [gen, gen.upper()]
        self._rank = {s: i for i, s in enumerate(self.symbols)}

        self.rules = []
        for rule in rules:
            if len(rule) != 2:
                raise GroupSpecError(f"rule must be a pair of words: {rule!r}")
            lhs, rhs = str(rule[0] or ""), str(rule[1] or "")
            self._check_word(lhs)
            self._check_word(rhs)
            if not lhs:
                raise GroupSpecError("rule with empty left-hand side")
            if not self.shortlex_less(rhs, lhs):
                raise GroupSpecError(
                    f"rule {display_word(lhs)} -> {display_word(rhs)} does not decrease in shortlex order")
            self.rules.append((lhs, rhs))

        # free reductions xX -> 1 and Xx -> 1 are always present
        self._all_rules = [(s + s.swapcase(), IDENTITY) for s in self.symbols]
        for rule in self.rules:
            if rule not in self._all_rules:
                self._all_rules.append(rule)
        self._rules_by_last = {}
        for lhs, rhs in self._all_rules:
            self._rules_by_last.setdefault(lhs[-1], []).append((lhs, rhs))

        self._nf_cache = {}
        self._spheres = [[IDENTITY]]
        self._lock = threading.Lock()

        if not self.presentation_only:
            unresolved = self.critical_pairs()
            if unresolved:
                word, left, right = unresolved[0]
                raise GroupSpecError(
                    f"rewriting system is not confluent: {display_word(word)} reduces to both "
                    f"{display_word(left)} and {display_word(right)} ({len(unresolved)} unresolved pairs)")

    def __repr__(self):
        return f"<GroupSpec {self.name or ','.join(self.generators)}>"

    # ---- words and orders

    def _check_word(self, word):
        for letter in word:
            if letter not in self._rank:
                raise GroupSpecError(f"unknown letter {letter!r} in word {word!r}")

    def shortlex_key(self, word):
        return len(word), tuple(self._rank[c] for c in word)

    def shortlex_less(self, u, v):
        return self.shortlex_key(u) < self.shortlex_key(v)

    def simplex_key(self, simplex):
        return tuple(self.shortlex_key(w) for w in simplex)

    def exponent_vector(self, word):
        """Exponent sum of every generator, in generator order"""
        self._check_word(word)
        return tuple(word.count(gen) - word.count(gen.upper()) for gen in self.generators)

    # ---- rewriting

    def _rewrite(self, word):
        """Applies rules until none matches; the result is irreducible."""
        pending = list(reversed(word))
        out = []
        while pending:
            out.append(pending.pop())
            for lhs, rhs in self._rules_by_last.get(out[-1], ()):
                size = len(lhs)
                if size <= len(out) and "".join(out[-size:]) == lhs:
                    del out[-size:]
                    pending.extend(reversed(rhs))
                    break
        return "".join(out)

    def critical_pairs(self):
        """
        Returns list of (word, reduct1, reduct2) for overlaps and inclusions of rule
        left-hand sides whose two one-step reductions do not meet again.
        """
        unresolved = []
        rules = self._all_rules
        for i, (l1, r1) in enumerate(rules):
            for j, (l2, r2) in enumerate(rules):
                # proper overlaps: a suffix of l1 equals a proper prefix of l2
                for start in range(1, len(l1)):
                    suffix = l1[start:]
                    if len(suffix) < len(l2) and l2.startswith(suffix):
                        word = l1 + l2[len(suffix):]
                        left = r1 + l2[len(suffix):]
                        right = l1[:start] + r2
                        self._record_pair(unresolved, word, left, right)
                # inclusions: l2 occurs inside l1
                if i != j and len(l2) <= len(l1):
                    pos = l1.find(l2)
                    while pos != -1:
                        right = l1[:pos] + r2 + l1[pos + len(l2):]
                        self._record_pair(unresolved, l1, r1, right)
                        pos = l1.find(l2, pos + 1)
        return unresolved

    def _record_pair(self, unresolved, word, left, right):
        a, b = self._rewrite(left), self._rewrite(right)
        if a != b:
            unresolved.append((word, a, b))

    def _require_metric(self):
        if self.presentation_only:
            raise GroupSpecError(
                f"{self.name or 'group'} is given by a presentation only; normal forms and word metric are unavailable")

    def normal_form(self, word):
        self._require_metric()
        nf = self._nf_cache.get(word)
        if nf is None:
            self._check_word(word)
            nf = self._rewrite(word)
            self._nf_cache[word] = nf
        return nf

    def multiply(self, g, h):
        return self.normal_form(g + h)

    def inverse(self, g):
        return self.normal_form(formal_inverse(g))

    def power(self, g, k):
        if k < 0:
            return self.normal_form(formal_inverse(g) * -k)
        return self.normal_form(g * k)

    # ---- word metric

    def word_length(self, g):
        """Shortlex-least words are geodesic, so the length of the normal form is the word length."""
        return len(self.normal_form(g))

    def distance(self, g, h):
        return len(self.normal_form(formal_inverse(g) + h))

    def sphere(self, radius):
        self._require_metric()
        if radius < 0:
            raise ValueError("radius must be non-negative")
        with self._lock:
            while len(self._spheres) <= radius:
                size = len(self._spheres)
                found = set()
                for word in self._spheres[-1]:
                    for letter in self.symbols:
                        g = self.normal_form(word + letter)
                        if len(g) == size:
                            found.add(g)
                self._spheres.append(sorted(found, key=self.shortlex_key))
            return list(self._spheres[radius])

    def ball(self, radius):
        """All elements of word length at most radius, in shortlex order"""
        elements = []
        for r in range(radius + 1):
            elements += self.sphere(r)
        return elements

    # ---- serialization

    def to_dict(self):
        return {
            "generators": list(self.generators),
            "rules": [[lhs, rhs] for lhs, rhs in self.rules],
            "presentation-only": self.presentation_only,
        }

    def spec_hash(self):
        return sha256_hex(canonical_json(self.to_dict()))


def template_spec(name):
    """
    Builds a spec from a template name: "Zn" (free abelian), "Fn" (free),
    products of these joined by "x" (e.g. "F2xZ1", factors commute with each
    other) and "BS(1,n)" (Baumslag-Solitar, presentation only).
    """
    text = name.replace(" ", "")
    match = re.fullmatch(r"BS\(1,(-?\d+)\)", text)
    if match:
        power = int(match.group(1))
        if power == 0:
            raise GroupSpecError("BS(1,0) is not supported")
        conjugate = "taT"
        target = ("a" if power > 0 else "A") * abs(power)
        free = GroupSpec(["a", "t"], [], presentation_only=True, name=text)
        if free.shortlex_less(target, conjugate):
            rule = (conjugate, target)
        else:
            rule = (target, conjugate)
        return GroupSpec(["a", "t"], [rule], presentation_only=True, name=text)

    factors = text.split("x")
    letters = [c for c in "abcdefghijklmnopqrsuvwyz"]
    generators = []
    blocks = []
    for factor in factors:
        match = re.fullmatch(r"([ZF])(\d+)", factor)
        if not match:
            raise GroupSpecError(f"unknown group template {name!r}; known: {TEMPLATE_NAMES}")
        kind, rank = match.group(1), int(match.group(2))
        if rank < 1 or len(generators) + rank > len(letters):
            raise GroupSpecError(f"unsupported rank in template {name!r}")
        block = letters[len(generators):len(generators) + rank]
        generators += block
        blocks.append((kind, block))

    commuting = []
    for i, (kind, block) in enumerate(blocks):
        if kind == "Z":
            commuting += [(x, y) for k, x in enumerate(block) for y in block[k + 1:]]
        for _, other in blocks[i + 1:]:
            commuting += [(x, y) for x in block for y in other]

    rules = []
    for x, y in commuting:
        X, Y = x.upper(), y.upper()
        rules += [(y + x, x + y), (y + X, X + y), (Y + x, x + Y), (Y + X, X + Y)]
    return GroupSpec(generators, rules, name=text)


def group_spec_from_dict(data):
    if not isinstance(data, dict):
        raise GroupSpecError("group spec must be a mapping")
    template = data.get("template")
    if template is not None:
        if "generators" in data or "rules" in data:
            raise GroupSpecError("group spec gives both a template and generators/rules")
        return template_spec(str(template))
    if "generators" not in data:
        raise GroupSpecError("group spec is missing 'generators'")
    rules = data.get("rules") or []
    if not isinstance(rules, list):
        raise GroupSpecError("'rules' must be a list of [lhs, rhs] pairs")
    return GroupSpec(data["generators"], rules,
                     presentation_only=data.get("presentation-only", False),
                     name=data.get("name"))


def load_group_spec(path):
    """Loads a group spec from a YAML or JSON file."""
    return group_spec_from_dict(load_yaml(path, "group spec"))


class Character(object):
    """ Homomorphism to the rationals, given by its values on the generators """

    def __init__(self, generators, values, name=None):
        self.generators = list(generators)
        self.values = tuple(Fraction(v) for v in values)
        self.name = name
        if len(self.values) != len(self.generators):
            raise CharacterError("character needs one value per generator")
        self._letter_value = {}
        for gen, value in zip(self.generators, self.values):
            self._letter_value[gen] = value
            self._letter_value[gen.upper()] = -value

    def __call__(self, word):
        try:
            return sum((self._letter_value[c] for c in word), Fraction(0))
        except KeyError as err:
            raise CharacterError(f"unknown letter {err} for character")

    def __eq__(self, other):
        return isinstance(other, Character) and self.generators == other.generators and self.values == other.values

    def __hash__(self):
        return hash((tuple(self.generators), self.values))

    def __repr__(self):
        return f"<Character {self.to_text()}>"

    def is_zero(self):
        return not any(self.values)

    def scaled(self, factor):
        return Character(self.generators, [v * Fraction(factor) for v in self.values])

    def to_dict(self):
        return {gen: format_rational(v) for gen, v in zip(self.generators, self.values)}

    def to_text(self):
        return ",".join(f"{gen}={format_rational(v)}" for gen, v in zip(self.generators, self.values))


def char_eval(chi, g):
    return chi(g)


def validate_character(spec, values, name=None):
    """
    Builds a Character for the group spec and checks that it vanishes on every relation.
    :param values: mapping generator -> rational, or sequence in generator order
    """
    if isinstance(values, Character):
        values = dict(zip(values.generators, values.values))
    if isinstance(values, dict):
        unknown = sorted(set(values) - set(spec.generators))
        if unknown:
            raise CharacterError(f"character gives values for unknown generators: {', '.join(map(str, unknown))}")
        missing = [gen for gen in spec.generators if gen not in values]
        if missing:
            raise CharacterError(f"character is missing values for: {', '.join(missing)}")
        raw = [values[gen] for gen in spec.generators]
    else:
        raw = list(values)
        if len(raw) != len(spec.generators):
            raise CharacterError(f"character needs {len(spec.generators)} values, got {len(raw)}")
    try:
        parsed = [parse_rational(v) for v in raw]
    except ValueError as err:
        raise CharacterError(str(err))

    chi = Character(spec.generators, parsed, name=name)
    violated = []
    for lhs, rhs in spec.rules:
        if chi(lhs) != chi(rhs):
            violated.append(f"{display_word(lhs)} = {display_word(rhs)}")
    if violated:
        raise CharacterError("character does not vanish on relations: " + "; ".join(violated))
    return chi


def character_from_dict(spec, data):
    if not isinstance(data, dict):
        raise CharacterError("character file must be a mapping")
    values = data.get("values", data)
    if not isinstance(values, (dict, list)):
        raise CharacterError("character 'values' must be a mapping or a list")
    return validate_character(spec, values, name=data.get("name") if "values" in data else None)


class HalfSpaceWindow(object):
    """ Finite search window: union of balls around center elements, cut by a level of the character """

    def __init__(self, level, center_support, radius):
        """
        :param level: minimal character value allowed, or None for no cut
        :param center_support: elements around which balls are taken
        :param radius: radius of the balls
        """
        if radius < 0:
            raise ValueError("window radius must be non-negative")
        self.level = level
        self.center_support = tuple(center_support)
        self.radius = radius


def window_elements(spec, chi, window):
    """Elements of the window in shortlex order, each listed once"""
    found = set()
    ball = spec.ball(window.radius)
    for center in window.center_support:
        for b in ball:
            g = spec.multiply(center, b)
            if window.level is None or chi(g) >= window.level:
                found.add(g)
    return sorted(found, key=spec.shortlex_key)
