"""
Vietoris-Rips simplices over a group and finite integer chains on them.

An ordered q-simplex is a tuple of q+1 group elements (normal forms), repeats
allowed. It lies in the Rips complex VR_k when all its vertices are pairwise
at distance at most k. The group acts by left translation on vertices.
"""

import math

from .group import IDENTITY, window_elements


class Chain(object):
    """ Finite integer linear combination of ordered q-simplices; zero coefficients are never stored """

    def __init__(self, q, terms=None):
        if q < 0:
            raise ValueError("chain degree must be non-negative")
        self.q = q
        self.terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for simplex, coef in items:
                self._add_term(simplex, coef)

    @classmethod
    def from_simplex(cls, simplex, coef=1):
        return cls(len(simplex) - 1, {tuple(simplex): coef})

    def _add_term(self, simplex, coef):
        simplex = tuple(simplex)
        if len(simplex) != self.q + 1:
            raise ValueError(f"simplex {simplex} does not have dimension {self.q}")
        value = self.terms.get(simplex, 0) + coef
        if value:
            self.terms[simplex] = value
        else:
            self.terms.pop(simplex, None)

    def _check_degree(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if other.q != self.q:
            raise ValueError(f"cannot combine chains of degree {self.q} and {other.q}")
        return None

    def __add__(self, other):
        if self._check_degree(other) is NotImplemented:
            return NotImplemented
        result = Chain(self.q, self.terms)
        for simplex, coef in other.terms.items():
            result._add_term(simplex, coef)
        return result

    def __neg__(self):
        return Chain(self.q, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        if self._check_degree(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, factor):
        if not isinstance(factor, int):
            return NotImplemented
        return Chain(self.q, {s: c * factor for s, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Chain) and self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.q, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"<Chain q={self.q} {self.terms}>"

    def items(self):
        return self.terms.items()

    def support(self):
        return list(self.terms)

    def vertices(self):
        found = set()
        for simplex in self.terms:
            found.update(simplex)
        return found

    def sorted_items(self, spec):
        return sorted(self.terms.items(), key=lambda item: spec.simplex_key(item[0]))


def is_k_small(spec, simplex, k):
    return all(spec.distance(simplex[i], simplex[j]) <= k
               for i in range(len(simplex)) for j in range(i + 1, len(simplex)))


def simplex_boundary(simplex):
    """Faces of an ordered simplex with alternating signs (faces may repeat)"""
    return [(simplex[:i] + simplex[i + 1:], -1 if i % 2 else 1) for i in range(len(simplex))]


def boundary(chain):
    if chain.q < 1:
        raise ValueError("boundary is defined on chains of degree at least 1")
    result = Chain(chain.q - 1)
    for simplex, coef in chain.terms.items():
        for face, sign in simplex_boundary(simplex):
            result._add_term(face, sign * coef)
    return result


def augmentation(chain):
    if chain.q != 0:
        raise ValueError("augmentation is defined on 0-chains only")
    return sum(chain.terms.values())


def simplex_valuation(chi, simplex):
    return min(chi(g) for g in simplex)


def valuation(chi, chain):
    """Minimum of the character over the support vertices; +inf for the zero chain"""
    if not chain:
        return math.inf
    return min(chi(g) for g in chain.vertices())


def translate_simplex(spec, g, simplex):
    return tuple(spec.multiply(g, x) for x in simplex)


def translate(spec, g, chain):
    return Chain(chain.q, {translate_simplex(spec, g, s): c for s, c in chain.terms.items()})


def representative(spec, simplex):
    """
    Splits a simplex into (x0, rep) with simplex = x0 * rep and rep starting at the identity.
    """
    x0 = simplex[0]
    x0_inv = spec.inverse(x0)
    return x0, tuple(spec.multiply(x0_inv, x) for x in simplex)


def _extend_cliques(spec, prefix, candidates, size, k, found):
    if len(prefix) == size:
        found.append(tuple(prefix))
        return
    for x in candidates:
        if all(spec.distance(y, x) <= k for y in prefix):
            prefix.append(x)
            _extend_cliques(spec, prefix, candidates, size, k, found)
            prefix.pop()


def enumerate_rep_simplices(spec, q, k):
    """
    All k-small ordered q-simplices starting at the identity, lexicographic in shortlex order.
    These represent the orbits of the group action on q-simplices of VR_k.
    """
    found = []
    _extend_cliques(spec, [IDENTITY], spec.ball(k), q + 1, k, found)
    return found


def enumerate_constrained_simplices(spec, q, k, chi, window):
    """k-small ordered q-simplices with all vertices in the window, lexicographic in shortlex order"""
    vertices = window_elements(spec, chi, window)
    found = []
    for v in vertices:
        _extend_cliques(spec, [v], vertices, q + 1, k, found)
    return found


def apply_tables(spec, tables, chain):
    """
    Extends a table of images of representative simplices equivariantly:
    the image of x0 * rep is x0 times the image of rep.
    """
    result = None
    for simplex, coef in chain.terms.items():
        x0, rep = representative(spec, simplex)
        try:
            image = tables[rep]
        except KeyError:
            raise ValueError(f"no table entry for representative simplex {rep}")
        term = translate(spec, x0, image) * coef
        result = term if result is None else result + term
    return Chain(chain.q) if result is None else result
