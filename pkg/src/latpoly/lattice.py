"""Finite bounded lattices with tabulated order, meet, and join.

Elements carry dense integer ids 0..m-1 arranged in a fixed linear
extension of the order (topological sort of the covers, ties broken by
declaration order).  The bottom therefore always has id 0 and the top id
m-1, and every exhaustive scan in the package is deterministic.  All
operations are table lookups; instances are immutable after construction
and safe to share between workers.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from .errors import (
    CycleError,
    EmptyIntervalError,
    FormatError,
    InvalidParamsError,
    NoBoundsError,
    NotALatticeError,
    UnknownElementError,
)
from .points import PointSpace

DEFAULT_MAX_ELEMENTS = 256

_ATOM_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Element:
    """Named lattice element; usable directly as an index into the tables."""

    id: int
    name: str

    def __index__(self):
        return self.id

    def __str__(self):
        return self.name


class FiniteLattice:
    """Bounded lattice given extensionally, with meet/join precomputed.

    Public operations accept either raw ids or :class:`Element` values and
    return raw ids; use ``elements[i].name`` for display.
    """

    def __init__(self, name, element_names, leq, max_size=DEFAULT_MAX_ELEMENTS):
        """Build from a full reflexive-transitive order matrix.

        ``leq[i][j]`` refers to positions in ``element_names``; elements are
        re-indexed into a linear extension internally.  Most callers want
        :func:`build_from_covers` or one of the standard constructors.
        """
        m = len(element_names)
        if m == 0:
            raise InvalidParamsError("a lattice needs at least one element")
        if m > max_size:
            raise InvalidParamsError(
                f"{m} elements exceed the cap of {max_size}; "
                f"pass max_size to raise it"
            )
        if len(set(element_names)) != m:
            raise InvalidParamsError("element names must be unique")
        for i in range(m):
            if not leq[i][i]:
                raise InvalidParamsError("order relation is not reflexive")
        for i in range(m):
            row = leq[i]
            for j in range(m):
                if i != j and row[j] and leq[j][i]:
                    raise CycleError(
                        f"elements {element_names[i]!r} and "
                        f"{element_names[j]!r} order each other"
                    )
        for i in range(m):
            for j in range(m):
                if leq[i][j]:
                    rj = leq[j]
                    ri = leq[i]
                    for k in range(m):
                        if rj[k] and not ri[k]:
                            raise InvalidParamsError(
                                "order relation is not transitive"
                            )

        order = _linear_extension(leq)
        self.name = name
        self.m = m
        self.elements = tuple(
            Element(new_id, element_names[old]) for new_id, old in enumerate(order)
        )
        self._id_by_name = {e.name: e.id for e in self.elements}
        self._leq = [[leq[order[i]][order[j]] for j in range(m)] for i in range(m)]

        bottoms = [i for i in range(m) if all(self._leq[i][x] for x in range(m))]
        tops = [i for i in range(m) if all(self._leq[x][i] for x in range(m))]
        if not bottoms or not tops:
            raise NoBoundsError(
                f"lattice {name!r} has no global "
                + ("minimum" if not bottoms else "maximum")
            )
        self.bottom_id = bottoms[0]
        self.top_id = tops[0]

        self._meet_t, self._join_t = self._build_tables()
        self.covers_up, self.covers_down = self._build_covers()
        self.distributive = self._scan_distributive()
        self._cache = {}

    # -- construction internals -------------------------------------------

    def _build_tables(self):
        m = self.m
        leq = self._leq
        meet_t = [[0] * m for _ in range(m)]
        join_t = [[0] * m for _ in range(m)]
        for i in range(m):
            li = leq[i]
            for j in range(i, m):
                lj = leq[j]
                uppers = [k for k in range(m) if li[k] and lj[k]]
                if not uppers:
                    raise NotALatticeError(
                        f"elements {self.elements[i].name!r} and "
                        f"{self.elements[j].name!r} have no upper bound",
                        pair=(i, j),
                    )
                # ids are a linear extension, so a least upper bound, if it
                # exists, is the smallest id among the upper bounds
                u0 = uppers[0]
                lu = leq[u0]
                if not all(lu[u] for u in uppers):
                    raise NotALatticeError(
                        f"elements {self.elements[i].name!r} and "
                        f"{self.elements[j].name!r} have no least upper bound",
                        pair=(i, j),
                    )
                lowers = [k for k in range(m) if leq[k][i] and leq[k][j]]
                if not lowers:
                    raise NotALatticeError(
                        f"elements {self.elements[i].name!r} and "
                        f"{self.elements[j].name!r} have no lower bound",
                        pair=(i, j),
                    )
                w0 = lowers[-1]
                if not all(leq[w][w0] for w in lowers):
                    raise NotALatticeError(
                        f"elements {self.elements[i].name!r} and "
                        f"{self.elements[j].name!r} have no greatest lower bound",
                        pair=(i, j),
                    )
                join_t[i][j] = join_t[j][i] = u0
                meet_t[i][j] = meet_t[j][i] = w0
        return meet_t, join_t

    def _build_covers(self):
        m = self.m
        leq = self._leq
        up = [[] for _ in range(m)]
        down = [[] for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                if not leq[i][j]:
                    continue
                if any(leq[i][k] and leq[k][j] for k in range(i + 1, j)):
                    continue
                up[i].append(j)
                down[j].append(i)
        return [tuple(l) for l in up], [tuple(l) for l in down]

    def _scan_distributive(self):
        m = self.m
        meet_t = self._meet_t
        join_t = self._join_t
        for x in range(m):
            mx = meet_t[x]
            for y in range(m):
                xy = mx[y]
                jy = join_t[y]
                for z in range(m):
                    if mx[jy[z]] != join_t[xy][mx[z]]:
                        return False
        return True

    # -- basic operations --------------------------------------------------

    def element(self, name):
        """Look up an Element by display name."""
        try:
            return self.elements[self._id_by_name[name]]
        except KeyError:
            raise UnknownElementError(
                f"{name!r} is not an element of lattice {self.name!r}"
            ) from None

    def leq(self, a, b):
        return self._leq[operator.index(a)][operator.index(b)]

    def meet(self, a, b):
        return self._meet_t[operator.index(a)][operator.index(b)]

    def join(self, a, b):
        return self._join_t[operator.index(a)][operator.index(b)]

    def order_ops(self, a, b):
        """The triple (a <= b, a meet b, a join b)."""
        i, j = operator.index(a), operator.index(b)
        return self._leq[i][j], self._meet_t[i][j], self._join_t[i][j]

    def med(self, x, y, z):
        """Ternary median (x v y) ^ (x v z) ^ (y v z); symmetric in all args."""
        i, j, k = operator.index(x), operator.index(y), operator.index(z)
        jt, mt = self._join_t, self._meet_t
        return mt[mt[jt[i][j]][jt[i][k]]][jt[j][k]]

    def interval(self, a, b):
        """All x with a <= x <= b, ascending by id. Raises if a is not below b."""
        i, j = operator.index(a), operator.index(b)
        if not self._leq[i][j]:
            raise EmptyIntervalError(
                f"{self.elements[i].name!r} is not below {self.elements[j].name!r}"
            )
        leq = self._leq
        return [x for x in range(self.m) if leq[i][x] and leq[x][j]]

    def truncate(self, point, c, direction):
        """Coordinate truncation of a point against a threshold element.

        ``below``: coordinates <= c collapse to bottom; ``above``:
        coordinates >= c collapse to top; all others are kept.
        """
        ci = operator.index(c)
        leq = self._leq
        if direction == "below":
            return tuple(
                self.bottom_id if leq[operator.index(d)][ci] else operator.index(d)
                for d in point
            )
        if direction == "above":
            return tuple(
                self.top_id if leq[ci][operator.index(d)] else operator.index(d)
                for d in point
            )
        raise InvalidParamsError(f"direction must be 'below' or 'above', got {direction!r}")

    def upset_ids(self, v):
        """Ids of all elements above v, ascending."""
        lv = self._leq[operator.index(v)]
        return [w for w in range(self.m) if lv[w]]

    def point_space(self, n):
        """Shared PointSpace for arity n (cached)."""
        key = ("space", n)
        sp = self._cache.get(key)
        if sp is None:
            sp = self._cache[key] = PointSpace(self.m, n)
        return sp

    def format_point(self, point):
        return "(" + ",".join(self.elements[operator.index(d)].name for d in point) + ")"

    def __repr__(self):
        return (
            f"FiniteLattice({self.name!r}, m={self.m}, "
            f"distributive={self.distributive})"
        )


def _linear_extension(leq):
    """Kahn's algorithm; ties broken by position (declaration order)."""
    m = len(leq)
    pred = [sum(1 for j in range(m) if j != i and leq[j][i]) for i in range(m)]
    remaining = list(range(m))
    order = []
    while remaining:
        pick = next(i for i in remaining if pred[i] == 0)
        order.append(pick)
        remaining.remove(pick)
        for j in remaining:
            if leq[pick][j]:
                pred[j] -= 1
    return order


def _closure_from_covers(names, covers, what="lattice"):
    """Reflexive-transitive closure of a cover list; checks acyclicity."""
    m = len(names)
    if m == 0:
        raise InvalidParamsError(f"a {what} needs at least one element")
    if len(set(names)) != m:
        raise InvalidParamsError(f"duplicate element names in {what}")
    index = {nm: i for i, nm in enumerate(names)}
    adj = [[] for _ in range(m)]
    for low, high in covers:
        if low not in index or high not in index:
            missing = low if low not in index else high
            raise InvalidParamsError(f"cover pair references undeclared name {missing!r}")
        if low == high:
            raise CycleError(f"cover {low!r} < {high!r} relates an element to itself")
        adj[index[low]].append(index[high])
    leq = [[i == j for j in range(m)] for i in range(m)]
    for start in range(m):
        stack = list(adj[start])
        row = leq[start]
        while stack:
            v = stack.pop()
            if not row[v]:
                row[v] = True
                stack.extend(adj[v])
    for i in range(m):
        for j in range(i + 1, m):
            if leq[i][j] and leq[j][i]:
                raise CycleError(
                    f"the covers create a cycle through {names[i]!r} and {names[j]!r}"
                )
    return leq


def build_from_covers(name, names, covers, max_size=DEFAULT_MAX_ELEMENTS):
    """Build a lattice from element names plus a (low, high) cover list.

    The order is the reflexive-transitive closure of the covers; bottom and
    top are inferred.  Raises CycleError, NoBoundsError, or NotALatticeError
    when the closure is not a bounded lattice.
    """
    leq = _closure_from_covers(names, covers)
    return FiniteLattice(name, list(names), leq, max_size=max_size)


# -- standard constructions -------------------------------------------------


def chain(k, max_size=DEFAULT_MAX_ELEMENTS):
    """Total order on k elements. The 3-chain is named 0 < m < 1."""
    if k < 2:
        raise InvalidParamsError("a chain needs at least 2 elements")
    if k == 2:
        names = ["0", "1"]
    elif k == 3:
        names = ["0", "m", "1"]
    else:
        names = ["0"] + [f"c{i}" for i in range(1, k - 1)] + ["1"]
    leq = [[i <= j for j in range(k)] for i in range(k)]
    return FiniteLattice(f"chain{k}", names, leq, max_size=max_size)


def boolean(k, max_size=DEFAULT_MAX_ELEMENTS):
    """Boolean lattice of all subsets of k atoms (named a, b, c, ...)."""
    if k < 1:
        raise InvalidParamsError("a boolean lattice needs at least 1 atom")
    if k > len(_ATOM_LETTERS):
        raise InvalidParamsError(f"at most {len(_ATOM_LETTERS)} atoms supported")
    m = 1 << k
    full = m - 1

    def subset_name(mask):
        if mask == 0:
            return "0"
        if mask == full:
            return "1"
        return "".join(_ATOM_LETTERS[i] for i in range(k) if mask >> i & 1)

    names = [subset_name(s) for s in range(m)]
    leq = [[(i & j) == i for j in range(m)] for i in range(m)]
    return FiniteLattice(f"B{k}", names, leq, max_size=max_size)


def product(lat1, lat2, max_size=DEFAULT_MAX_ELEMENTS):
    """Direct product with the componentwise order."""
    names = []
    pairs = []
    for e1 in lat1.elements:
        for e2 in lat2.elements:
            names.append(f"({e1.name},{e2.name})")
            pairs.append((e1.id, e2.id))
    m = len(pairs)
    if m > max_size:
        raise InvalidParamsError(
            f"product has {m} elements, above the cap of {max_size}"
        )
    l1, l2 = lat1._leq, lat2._leq
    leq = [
        [l1[a1][b1] and l2[a2][b2] for (b1, b2) in pairs]
        for (a1, a2) in pairs
    ]
    return FiniteLattice(f"{lat1.name}x{lat2.name}", names, leq, max_size=max_size)


def downset_lattice(poset_names, poset_covers, name=None, max_size=DEFAULT_MAX_ELEMENTS):
    """Lattice of downward-closed subsets of a finite poset, ordered by inclusion.

    Always distributive; this is the generic way to produce distributive
    test fixtures of any shape.
    """
    p = len(poset_names)
    if p > 20:
        raise InvalidParamsError("downset construction supports at most 20 poset elements")
    leq = _closure_from_covers(poset_names, poset_covers, what="poset")
    below = [sum(1 << i for i in range(p) if leq[i][j]) for j in range(p)]

    downsets = []
    for mask in range(1 << p):
        if all(mask & below[j] == below[j] for j in range(p) if mask >> j & 1):
            downsets.append(mask)
    if len(downsets) > max_size:
        raise InvalidParamsError(
            f"poset has {len(downsets)} downsets, above the cap of {max_size}"
        )

    def ds_name(mask):
        if mask == 0:
            return "{}"
        return "{" + ",".join(poset_names[i] for i in range(p) if mask >> i & 1) + "}"

    names = [ds_name(s) for s in downsets]
    order = [[(a & b) == a for b in downsets] for a in downsets]
    return FiniteLattice(name or "downsets", names, order, max_size=max_size)


def n5(max_size=DEFAULT_MAX_ELEMENTS):
    """The pentagon: the smallest non-modular (hence non-distributive) lattice."""
    return build_from_covers(
        "N5",
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        max_size=max_size,
    )


def m3(max_size=DEFAULT_MAX_ELEMENTS):
    """The diamond: three pairwise-incomparable atoms under a common top."""
    return build_from_covers(
        "M3",
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        max_size=max_size,
    )


def standard_lattice(kind, *params, max_size=DEFAULT_MAX_ELEMENTS):
    """Dispatch to the named standard construction.

    Kinds: chain(k), boolean(k), product(L1, L2), downset(names, covers),
    N5, M3.
    """
    kind = str(kind).lower()
    try:
        if kind == "chain":
            (k,) = params
            return chain(k, max_size=max_size)
        if kind == "boolean":
            (k,) = params
            return boolean(k, max_size=max_size)
        if kind == "product":
            l1, l2 = params
            return product(l1, l2, max_size=max_size)
        if kind == "downset":
            names, covers = params
            return downset_lattice(names, covers, max_size=max_size)
        if kind == "n5":
            if params:
                raise InvalidParamsError("N5 takes no parameters")
            return n5(max_size=max_size)
        if kind == "m3":
            if params:
                raise InvalidParamsError("M3 takes no parameters")
            return m3(max_size=max_size)
    except ValueError as exc:
        raise InvalidParamsError(f"bad parameters for {kind!r}: {exc}") from None
    raise InvalidParamsError(f"unknown lattice kind {kind!r}")


# -- text format --------------------------------------------------------------
#
#   lattice <name>
#   elements: <name> <name> ...
#   covers:
#   <low> < <high>
#
# Whitespace-separated; '#' starts a comment line; bottom/top are inferred.


def lattice_from_text(text, source="<lattice>", max_size=DEFAULT_MAX_ELEMENTS):
    """Parse the lattice text format and construct the lattice."""
    name = None
    names = None
    covers = []
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if state == "header":
            if tokens[0] != "lattice" or len(tokens) != 2:
                raise FormatError("expected 'lattice <name>'", source, lineno)
            name = tokens[1]
            state = "elements"
        elif state == "elements":
            if tokens[0] != "elements:" or len(tokens) < 2:
                raise FormatError("expected 'elements: <name> ...'", source, lineno)
            names = tokens[1:]
            state = "covers-header"
        elif state == "covers-header":
            if tokens != ["covers:"]:
                raise FormatError("expected 'covers:'", source, lineno)
            state = "covers"
        else:
            if len(tokens) != 3 or tokens[1] != "<":
                raise FormatError("expected '<low> < <high>'", source, lineno)
            covers.append((tokens[0], tokens[2]))
    if state != "covers":
        raise FormatError(f"incomplete lattice description (stopped at {state})", source)
    try:
        return build_from_covers(name, names, covers, max_size=max_size)
    except InvalidParamsError as exc:
        raise FormatError(str(exc), source) from exc


def lattice_to_text(lat):
    """Serialize in the lattice text format; round-trips element order."""
    lines = [
        f"lattice {lat.name}",
        "elements: " + " ".join(e.name for e in lat.elements),
        "covers:",
    ]
    for i, ups in enumerate(lat.covers_up):
        for j in ups:
            lines.append(f"{lat.elements[i].name} < {lat.elements[j].name}")
    return "\n".join(lines) + "\n"


def load_lattice(path, max_size=DEFAULT_MAX_ELEMENTS):
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_from_text(fh.read(), source=str(path), max_size=max_size)
