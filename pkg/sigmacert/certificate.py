"""
Witness data and its certificate file format.

A certificate is a canonical JSON document (sorted keys, fixed indentation)
holding a header and the witness tables. Group elements are stored as their
normal-form words, the identity as the empty string, rationals as "p/q" text.
"""

import os
import json

from .group import Character, GroupSpecError
from .rips import Chain
from .sigma_utils import canonical_json, display_simplex, format_rational, parse_rational

FORMAT_VERSION = 1

HOMOLOGICAL = "homological"
HOMOTOPICAL = "homotopical"


class CertificateError(ValueError):
    pass


class ConnectingVector(object):
    """ Natural numbers n_0, ..., n_m (not necessarily increasing) with their flavor """

    def __init__(self, entries, flavor=HOMOLOGICAL, heuristic=False):
        self.entries = tuple(int(n) for n in entries)
        self.flavor = flavor
        self.heuristic = heuristic
        if not self.entries:
            raise ValueError("connecting vector must not be empty")
        if any(n < 0 for n in self.entries):
            raise ValueError("connecting vector entries must be natural numbers")
        if flavor not in (HOMOLOGICAL, HOMOTOPICAL):
            raise ValueError(f"unknown connecting vector flavor {flavor!r}")

    @classmethod
    def parse(cls, text, flavor=HOMOLOGICAL):
        """Parses "0,1,2" or "(0,1,2)"."""
        parts = text.strip().strip("()").split(",")
        try:
            return cls([int(p) for p in parts if p.strip()], flavor)
        except ValueError:
            raise ValueError(f"invalid connecting vector {text!r}")

    @property
    def m(self):
        return len(self.entries) - 1

    @property
    def n(self):
        return max(self.entries)

    def __getitem__(self, q):
        return self.entries[q]

    def __eq__(self, other):
        return isinstance(other, ConnectingVector) and (self.entries, self.flavor) == (other.entries, other.flavor)

    def __repr__(self):
        return f"<ConnectingVector {self.to_text()} {self.flavor}>"

    def to_text(self):
        return "(" + ",".join(str(n) for n in self.entries) + ")"


class CombinatorialDisk(object):
    """ Triangulated disk whose vertices carry group element labels """

    def __init__(self, labels, triangles, boundary_cycle):
        """
        :param labels: list of group elements, one per vertex index
        :param triangles: list of vertex index triples
        :param boundary_cycle: vertex indices around the boundary, in order
        """
        self.labels = list(labels)
        self.triangles = [tuple(t) for t in triangles]
        self.boundary_cycle = list(boundary_cycle)

    def boundary_labels(self):
        return [self.labels[i] for i in self.boundary_cycle]

    def to_dict(self):
        return {
            "labels": list(self.labels),
            "triangles": [list(t) for t in self.triangles],
            "boundary": list(self.boundary_cycle),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["labels"], data["triangles"], data["boundary"])


def path_side(path):
    """A single-vertex path stands for a degenerate edge [x, x]."""
    return list(path) if len(path) >= 2 else [path[0], path[0]]


def disk_boundary_labels(p01, p12, p02):
    """
    Labels around the boundary of the disk filling the triangle of paths
    p01 (x0 -> x1), p12 (x1 -> x2) and p02 (x0 -> x2), starting at x0.
    """
    s01, s12, s02 = path_side(p01), path_side(p12), path_side(p02)
    if s01[-1] != s12[0] or s12[-1] != s02[-1] or s01[0] != s02[0]:
        raise ValueError("paths do not form a closed triangle")
    return s01 + s12[1:] + s02[::-1][1:-1]


def triangle_side_paths(spec, paths, simplex):
    """
    The edge paths along the sides of a representative triangle (1, g1, g2).
    The middle side is the path of (1, g1^-1 g2) translated by g1.
    """
    _, g1, g2 = simplex
    shifted = paths[("", spec.multiply(spec.inverse(g1), g2))]
    return paths[("", g1)], [spec.multiply(g1, x) for x in shifted], paths[("", g2)]


class HomWitness(object):
    """ Tables of an equivariant chain map raising the valuation, one table per degree """

    flavor = HOMOLOGICAL

    def __init__(self, spec_hash, character, t, n, m, tables, connecting_vector=None):
        """
        :param tables: list indexed by degree q of dicts representative simplex -> Chain
        """
        self.spec_hash = spec_hash
        self.character = character
        self.t = t
        self.n = n
        self.m = m
        self.tables = tables
        self.connecting_vector = connecting_vector

    def image_entries(self):
        """Yields (q, simplex, image vertices) for every table entry"""
        for q, table in enumerate(self.tables):
            for simplex, image in table.items():
                yield q, simplex, image.vertices()

    def _body_to_dict(self, spec):
        return {
            "tables": [
                [{"simplex": list(simplex), "image": chain_to_list(spec, image)}
                 for simplex, image in sorted(table.items(), key=lambda item: spec.simplex_key(item[0]))]
                for table in self.tables
            ]
        }


class HtpyWitness(object):
    """ Edge paths for 1-simplices and labelled disks for 2-simplices """

    flavor = HOMOTOPICAL

    def __init__(self, spec_hash, character, t, n, m, paths, disks, connecting_vector=None):
        """
        :param paths: dict representative 1-simplex -> list of vertices
        :param disks: dict representative 2-simplex -> CombinatorialDisk
        """
        self.spec_hash = spec_hash
        self.character = character
        self.t = t
        self.n = n
        self.m = m
        self.paths = paths
        self.disks = disks
        self.connecting_vector = connecting_vector

    def image_entries(self):
        yield 0, ("",), {self.t}
        for simplex, path in self.paths.items():
            yield 1, simplex, set(path)
        for simplex, disk in self.disks.items():
            yield 2, simplex, set(disk.labels)

    def _body_to_dict(self, spec):
        return {
            "paths": [{"simplex": list(s), "path": list(p)}
                      for s, p in sorted(self.paths.items(), key=lambda item: spec.simplex_key(item[0]))],
            "disks": [dict(simplex=list(s), **d.to_dict())
                      for s, d in sorted(self.disks.items(), key=lambda item: spec.simplex_key(item[0]))],
        }


def chain_to_list(spec, chain):
    return [[coef, list(simplex)] for simplex, coef in chain.sorted_items(spec)]


def chain_from_list(q, data):
    chain = Chain(q)
    for coef, simplex in data:
        if not isinstance(coef, int) or isinstance(coef, bool):
            raise CertificateError(f"chain coefficient must be an integer: {coef!r}")
        chain = chain + Chain(q, {tuple(simplex): coef})
    return chain


def witness_to_dict(witness, spec):
    cv = witness.connecting_vector
    data = {
        "format-version": FORMAT_VERSION,
        "flavor": witness.flavor,
        "group-spec-hash": witness.spec_hash,
        "generators": list(spec.generators),
        "character": witness.character.to_dict(),
        "t": witness.t,
        "n": witness.n,
        "m": witness.m,
        "connecting-vector": list(cv.entries) if cv is not None else None,
    }
    data.update(witness._body_to_dict(spec))
    return data


def witness_to_json(witness, spec):
    return canonical_json(witness_to_dict(witness, spec))


def _check_words(spec, words, where):
    for word in words:
        if not isinstance(word, str):
            raise CertificateError(f"{where}: group element must be a word, got {word!r}")
        try:
            nf = spec.normal_form(word)
        except GroupSpecError as err:
            raise CertificateError(f"{where}: {err}")
        if nf != word:
            raise CertificateError(f"{where}: {word!r} is not a normal form")


def witness_from_dict(data, spec):
    """
    Rebuilds a witness from certificate data.
    Raises CertificateError on a malformed document or a group spec hash mismatch.
    """
    if not isinstance(data, dict):
        raise CertificateError("certificate must be a JSON object")
    if data.get("format-version") != FORMAT_VERSION:
        raise CertificateError(f"unsupported certificate format version {data.get('format-version')!r}")
    if data.get("group-spec-hash") != spec.spec_hash():
        raise CertificateError("certificate was made for a different group spec (hash mismatch)")
    try:
        values = data["character"]
        if sorted(values) != sorted(spec.generators):
            raise CertificateError("character generators do not match the group spec")
        character = Character(spec.generators, [parse_rational(values[g]) for g in spec.generators])
        t, n, m = data["t"], data["n"], data["m"]
        if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in (n, m)):
            raise CertificateError("'n' and 'm' must be natural numbers")
        _check_words(spec, [t], "t")
        cv = data.get("connecting-vector")
        flavor = data["flavor"]
        connecting_vector = ConnectingVector(cv, flavor) if cv is not None else None

        if flavor == HOMOLOGICAL:
            tables = []
            for q, rows in enumerate(data["tables"]):
                table = {}
                for row in rows:
                    simplex = tuple(row["simplex"])
                    _check_words(spec, simplex, f"degree {q} simplex")
                    image = chain_from_list(q, row["image"])
                    for s in image.support():
                        _check_words(spec, s, f"image of {display_simplex(simplex)}")
                    if simplex in table:
                        raise CertificateError(f"duplicate table entry {display_simplex(simplex)}")
                    table[simplex] = image
                tables.append(table)
            return HomWitness(data["group-spec-hash"], character, t, n, m, tables, connecting_vector)

        if flavor == HOMOTOPICAL:
            paths = {}
            for row in data.get("paths", []):
                simplex = tuple(row["simplex"])
                _check_words(spec, simplex + tuple(row["path"]), "path")
                paths[simplex] = list(row["path"])
            disks = {}
            for row in data.get("disks", []):
                simplex = tuple(row["simplex"])
                disk = CombinatorialDisk.from_dict(row)
                _check_words(spec, simplex + tuple(disk.labels), "disk")
                disks[simplex] = disk
            return HtpyWitness(data["group-spec-hash"], character, t, n, m, paths, disks, connecting_vector)
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, CertificateError):
            raise
        raise CertificateError(f"malformed certificate: {err!r}")
    raise CertificateError(f"unknown witness flavor {data.get('flavor')!r}")


def save_certificate(witness, spec, path):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        f.write(witness_to_json(witness, spec))


def load_certificate(path, spec):
    with open(path, "r") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as err:
            raise CertificateError("Unable to parse certificate JSON:\n" + str(err))
    return witness_from_dict(data, spec)


def witness_summary(witness):
    """Per-degree entry counts, largest image and smallest valuation raise"""
    chi = witness.character
    degrees = {}
    for q, simplex, vertices in witness.image_entries():
        info = degrees.setdefault(q, {"entries": 0, "max-image-vertices": 0, "min-raise": None})
        info["entries"] += 1
        info["max-image-vertices"] = max(info["max-image-vertices"], len(vertices))
        if vertices:
            rise = min(chi(g) for g in vertices) - min(chi(g) for g in simplex)
            if info["min-raise"] is None or rise < info["min-raise"]:
                info["min-raise"] = rise
    lines = [f"{witness.flavor} witness, n = {witness.n}, m = {witness.m}, t = {witness.t or '1'}"]
    for q in sorted(degrees):
        info = degrees[q]
        rise = "-" if info["min-raise"] is None else format_rational(info["min-raise"])
        lines.append(f"  q = {q}: {info['entries']} entries, largest image {info['max-image-vertices']} vertices,"
                     f" smallest raise {rise}")
    return "\n".join(lines)
