"""
Independent checking of witnesses.

Only the group core, chains and exact arithmetic are used here; nothing from
the searches. Every rejection names the first failed check and where it failed.
"""

from concurrent.futures import ThreadPoolExecutor

from .certificate import HOMOLOGICAL, HOMOTOPICAL, CertificateError, disk_boundary_labels, triangle_side_paths
from .group import IDENTITY, CharacterError, validate_character
from .rips import Chain, apply_tables, augmentation, boundary, enumerate_rep_simplices, is_k_small, valuation
from .sigma_utils import display_simplex, format_rational


class Verdict(object):
    """ Accept or reject, with the reason and locus of a rejection """

    def __init__(self, accepted, reason=None, locus=None):
        self.accepted = accepted
        self.reason = reason
        self.locus = locus

    def __bool__(self):
        return self.accepted

    def __repr__(self):
        return "<Verdict accept>" if self.accepted else f"<Verdict reject: {self.to_text()}>"

    def to_text(self):
        if self.accepted:
            return "ACCEPT"
        where = f" at {self.locus}" if self.locus else ""
        return f"REJECT: {self.reason}{where}"


ACCEPT = Verdict(True)


def _reject(reason, q=None, simplex=None):
    locus = None
    if simplex is not None:
        locus = f"degree {q}, simplex {display_simplex(simplex)}"
    return Verdict(False, reason, locus)


def _check_header(witness, spec):
    if witness.spec_hash != spec.spec_hash():
        raise CertificateError("witness was made for a different group spec (hash mismatch)")
    try:
        chi = validate_character(spec, witness.character)
    except CharacterError as err:
        return None, _reject(f"invalid character: {err}")
    if chi.is_zero():
        return None, _reject("character is zero")
    return chi, None


def _check_radius(witness):
    """n must be the largest connecting vector entry up to degree m, and at least 1 above degree 0"""
    cv = witness.connecting_vector
    if cv is None:
        return _reject("missing connecting vector")
    if cv.flavor != witness.flavor:
        return _reject(f"connecting vector is {cv.flavor}, witness is {witness.flavor}")
    if witness.m < 0 or witness.m > cv.m:
        return _reject(f"degree m = {witness.m} is not covered by connecting vector {cv.to_text()}")
    expected = max(cv.entries[:witness.m + 1])
    if witness.n != expected:
        return _reject(f"n = {witness.n} differs from {expected} given by connecting vector {cv.to_text()}")
    if witness.m >= 1 and witness.n < 1:
        return _reject("n must be at least 1 above degree 0")
    return None


def _check_keys(table, expected, q):
    expected_set = set(expected)
    for simplex in expected:
        if simplex not in table:
            return _reject("missing table entry", q, simplex)
    for simplex in table:
        if simplex not in expected_set:
            return _reject("unexpected table entry", q, simplex)
    return None


def _first_failure(checks, items, jobs):
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        for verdict in executor.map(checks, items):
            if verdict is not None:
                return verdict
    return None


def verify_hom_witness(witness, spec, jobs=1):
    """
    Checks a homological witness: complete tables, n-small images, augmentation
    one in degree 0, boundary compatibility and a strict valuation raise.
    """
    chi, verdict = _check_header(witness, spec)
    if verdict is None:
        verdict = _check_radius(witness)
    if verdict is not None:
        return verdict
    n, m = witness.n, witness.m
    if len(witness.tables) != m + 1:
        return _reject(f"expected {m + 1} tables, got {len(witness.tables)}")

    for q in range(m + 1):
        table = witness.tables[q]
        expected = enumerate_rep_simplices(spec, q, n)
        verdict = _check_keys(table, expected, q)
        if verdict is not None:
            return verdict

        def check(simplex, q=q, table=table):
            image = table[simplex]
            if not isinstance(image, Chain) or image.q != q:
                return _reject(f"image is not a {q}-chain", q, simplex)
            for s in image.support():
                if not is_k_small(spec, s, n):
                    return _reject(f"image simplex {display_simplex(s)} is not {n}-small", q, simplex)
            if q == 0:
                if augmentation(image) != 1:
                    return _reject("degree 0 image does not have augmentation 1", q, simplex)
            else:
                expected_boundary = apply_tables(spec, witness.tables[q - 1], boundary(Chain.from_simplex(simplex)))
                if boundary(image) != expected_boundary:
                    return _reject("boundary of the image differs from the image of the boundary", q, simplex)
            rise = valuation(chi, image) - min(chi(g) for g in simplex)
            if rise <= 0:
                return _reject(f"valuation raise {format_rational(rise)} is not positive", q, simplex)
            return None

        verdict = _first_failure(check, expected, jobs)
        if verdict is not None:
            return verdict
    return ACCEPT


def check_disk_invariants(disk):
    """
    Returns None for a triangulated disk, otherwise the first failed property:
    edge incidence, a single boundary cycle, connectivity, Euler characteristic
    one or vertex links.
    """
    labels, triangles, cycle = disk.labels, disk.triangles, disk.boundary_cycle
    size = len(labels)
    if not all(0 <= i < size for t in triangles for i in t) or not all(0 <= i < size for i in cycle):
        return "vertex index out of range"
    if not triangles:
        if size == 1 and cycle == [0]:
            return None
        return "disk without triangles must be a single vertex"
    if any(len(set(t)) != 3 for t in triangles):
        return "triangle with repeated vertex"
    if len({frozenset(t) for t in triangles}) != len(triangles):
        return "repeated triangle"

    edge_count = {}
    for t in triangles:
        for a, b in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2])):
            edge = frozenset((a, b))
            edge_count[edge] = edge_count.get(edge, 0) + 1
    if any(c > 2 for c in edge_count.values()):
        return "edge in more than two triangles"

    boundary_edges = {e for e, c in edge_count.items() if c == 1}
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return "boundary cycle is not a simple cycle"
    cycle_edges = {frozenset((cycle[i - 1], cycle[i])) for i in range(len(cycle))}
    if cycle_edges != boundary_edges:
        return "boundary edges do not form the given boundary cycle"

    used = {i for t in triangles for i in t}
    if used != set(range(size)):
        return "vertex not used by any triangle"
    parent = list(range(size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b, c in triangles:
        parent[find(b)] = find(a)
        parent[find(c)] = find(a)
    if len({find(i) for i in range(size)}) != 1:
        return "disk is not connected"

    if size - len(edge_count) + len(triangles) != 1:
        return "Euler characteristic is not 1"

    on_boundary = set(cycle)
    for v in range(size):
        link = {}
        for t in triangles:
            if v in t:
                a, b = [x for x in t if x != v]
                link.setdefault(a, []).append(b)
                link.setdefault(b, []).append(a)
        degrees = sorted(len(x) for x in link.values())
        if v in on_boundary:
            ok = degrees.count(1) == 2 and all(d <= 2 for d in degrees)
        else:
            ok = all(d == 2 for d in degrees)
        if not ok or not _link_connected(link):
            return f"link of vertex {v} is not a {'path' if v in on_boundary else 'cycle'}"
    return None


def _link_connected(link):
    if not link:
        return False
    start = next(iter(link))
    seen = {start}
    stack = [start]
    while stack:
        for x in link[stack.pop()]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return len(seen) == len(link)


def verify_htpy_witness(witness, spec, jobs=1):
    """
    Checks a homotopical witness: complete path and disk tables, paths from t to
    g*t with steps of length <= n, disks that are triangulated disks with the
    right boundary and n-small triangles, and a strict valuation raise.
    """
    chi, verdict = _check_header(witness, spec)
    if verdict is None and witness.m != 2:
        verdict = _reject(f"homotopical witnesses have degree m = 2, got {witness.m}")
    if verdict is None:
        verdict = _check_radius(witness)
    if verdict is not None:
        return verdict
    n, t = witness.n, witness.t
    if chi(t) <= 0:
        return _reject("degree 0 image does not raise the valuation", 0, (IDENTITY,))

    reps1 = enumerate_rep_simplices(spec, 1, n)
    verdict = _check_keys(witness.paths, reps1, 1)
    if verdict is not None:
        return verdict

    def check_path(simplex):
        path = witness.paths[simplex]
        if not path or path[0] != t or path[-1] != spec.multiply(simplex[1], t):
            return _reject("path does not join the images of the end points", 1, simplex)
        for a, b in zip(path, path[1:]):
            if spec.distance(a, b) > n:
                return _reject(f"path step {a or '1'} -> {b or '1'} is longer than {n}", 1, simplex)
        rise = min(chi(g) for g in path) - min(chi(g) for g in simplex)
        if rise <= 0:
            return _reject(f"valuation raise {format_rational(rise)} is not positive", 1, simplex)
        return None

    verdict = _first_failure(check_path, reps1, jobs)
    if verdict is not None:
        return verdict

    reps2 = enumerate_rep_simplices(spec, 2, n)
    verdict = _check_keys(witness.disks, reps2, 2)
    if verdict is not None:
        return verdict

    def check_disk(simplex):
        disk = witness.disks[simplex]
        problem = check_disk_invariants(disk)
        if problem is not None:
            return _reject(f"not a triangulated disk: {problem}", 2, simplex)
        expected = disk_boundary_labels(*triangle_side_paths(spec, witness.paths, simplex))
        if disk.boundary_labels() != expected:
            return _reject("disk boundary differs from the side paths", 2, simplex)
        for tri in disk.triangles:
            if not is_k_small(spec, [disk.labels[i] for i in tri], n):
                return _reject(f"triangle {tri} is not {n}-small", 2, simplex)
        rise = min(chi(g) for g in disk.labels) - min(chi(g) for g in simplex)
        if rise <= 0:
            return _reject(f"valuation raise {format_rational(rise)} is not positive", 2, simplex)
        return None

    verdict = _first_failure(check_disk, reps2, jobs)
    if verdict is not None:
        return verdict
    return ACCEPT


def verify_certificate(witness, spec, jobs=1):
    """
    Dispatches on the witness flavor.
    Raises CertificateError when the witness belongs to another group spec.
    """
    if witness.flavor == HOMOLOGICAL:
        return verify_hom_witness(witness, spec, jobs)
    if witness.flavor == HOMOTOPICAL:
        return verify_htpy_witness(witness, spec, jobs)
    raise CertificateError(f"unknown witness flavor {witness.flavor!r}")
