"""Ordered partitions and the permutohedral fans F_B of the moduli spaces L_B.

Lattice vectors of Z^B/Z are stored in the basis obtained by dropping the
coordinate of the lexicographically last label: a function f on B is
written as (f(b) - f(last) for b != last).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ParseError, PreconditionError
from .monoid_scheme import extend_to_basis, int_det
from .ring_core import Poly

__all__ = [
    "OrderedPartition",
    "TwoPartitionFamily",
    "Fan",
    "FanReport",
    "ForgetfulMap",
    "SectionMaps",
    "FiberChain",
    "ordered_partitions",
    "partition_to_good_family",
    "good_family_to_partition",
    "chi",
    "build_fan",
    "fan_checks",
    "cone_contains",
    "forgetful_map",
    "section_maps",
    "clutch",
    "orbit_count_poly",
    "fiber_chain",
    "parse_partition",
    "parse_labels",
    "parse_fan",
]


def _labels(B):
    return tuple(sorted(set(B)))


@dataclass(frozen=True)
class OrderedPartition:
    """Totally ordered list of disjoint nonempty parts covering the label set."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        seen = set()
        for p in parts:
            if not p:
                raise ValueError("parts must be nonempty")
            if seen & p:
                raise ValueError(f"parts overlap in {sorted(seen & p)}")
            seen |= p
        if not parts:
            raise ValueError("a partition has at least one part")

    @classmethod
    def trivial(cls, B):
        return cls((frozenset(B),))

    @property
    def labels(self):
        return _labels(itertools.chain.from_iterable(self.parts))

    def __len__(self):
        return len(self.parts)

    def sort_key(self):
        return (len(self.parts), tuple(tuple(sorted(p)) for p in self.parts))

    def format(self):
        return "[" + ",".join("{" + ",".join(sorted(p)) + "}" for p in self.parts) + "]"

    __str__ = format


@dataclass(frozen=True)
class TwoPartitionFamily:
    """Ordered 2-partitions (first, second) of the label set."""

    labels: tuple
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", _labels(self.labels))
        object.__setattr__(
            self, "members", tuple((frozenset(a), frozenset(b)) for a, b in self.members))
        B = frozenset(self.labels)
        for a, b in self.members:
            if not a or not b or a & b or (a | b) != B:
                raise ValueError("each member must be a 2-partition of the label set")

    def violation(self):
        """First pair (i, j), i < j, breaking goodness in the given order, or None."""
        for i, j in itertools.combinations(range(len(self.members)), 2):
            a, b = self.members[i][0], self.members[j][0]
            if not a < b:
                return (i, j)
        return None

    def is_good(self):
        return self.violation() is None


def ordered_partitions(B):
    """All ordered partitions of B, by number of parts then lexicographically."""
    B = _labels(B)
    if not B:
        return []

    def set_partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in set_partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part

    out = set()
    for part in set_partitions(list(B)):
        for perm in itertools.permutations(part):
            out.add(OrderedPartition(tuple(frozenset(p) for p in perm)))
    return sorted(out, key=OrderedPartition.sort_key)


def partition_to_good_family(tau):
    B = frozenset(tau.labels)
    members, acc = [], frozenset()
    for part in tau.parts[:-1]:
        acc = acc | part
        members.append((acc, B - acc))
    return TwoPartitionFamily(tau.labels, tuple(members))


def good_family_to_partition(fam):
    bad = fam.violation()
    if bad is not None:
        i, j = bad
        raise ValueError(f"family is not good: members {i} and {j} are not strictly nested")
    if not fam.members:
        return OrderedPartition.trivial(fam.labels)
    parts, prev = [], frozenset()
    for first, _ in fam.members:
        parts.append(first - prev)
        prev = first
    parts.append(fam.members[-1][1])
    return OrderedPartition(tuple(parts))


# lattice ----------------------------------------------------------------------


def chi(beta, B):
    """Characteristic function of beta modulo constants, in the basis dropping the last label."""
    B = _labels(B)
    last = B[-1]
    base = 1 if last in beta else 0
    return tuple((1 if b in beta else 0) - base for b in B[:-1])


def _lift(x, B):
    """Function on B with value 0 at the last label."""
    B = _labels(B)
    f = dict(zip(B[:-1], x))
    f[B[-1]] = 0
    return f


def _coords(f, B):
    B = _labels(B)
    base = f[B[-1]]
    return tuple(f[b] - base for b in B[:-1])


@dataclass(frozen=True)
class Fan:
    """Simplicial fan: ``cones`` is a tuple of (key, generators) pairs.

    Keys are ordered partitions for the fans F_B and arbitrary labels
    otherwise; ``labels`` is set only for F_B.
    """

    rank: int
    cones: tuple
    labels: tuple = None

    def cone(self, key):
        for k, gens in self.cones:
            if k == key:
                return gens
        raise KeyError(key)

    def keys(self):
        return [k for k, _ in self.cones]

    def maximal_cones(self):
        gen_sets = [frozenset(g) for _, g in self.cones]
        return [
            (k, g) for (k, g), s in zip(self.cones, gen_sets)
            if not any(s < t for t in gen_sets)
        ]

    def format(self):
        head = f"fan{{B={{{','.join(self.labels)}}}}}" if self.labels is not None else f"fan{{rank={self.rank}}}"
        lines = [head]
        for key, gens in self.cones:
            name = key.format() if isinstance(key, OrderedPartition) else str(key)
            vecs = " ".join("[" + ",".join(map(str, g)) + "]" for g in gens)
            lines.append(f"{name} : {vecs}".rstrip())
        return "\n".join(lines)

    __str__ = format


def build_fan(B):
    B = _labels(B)
    if not B:
        raise PreconditionError("label set must be nonempty")
    cones = []
    for tau in ordered_partitions(B):
        fam = partition_to_good_family(tau)
        cones.append((tau, tuple(chi(a, B) for a, _ in fam.members)))
    return Fan(len(B) - 1, tuple(cones), B)


# fan checks -------------------------------------------------------------------


def _rank(vectors):
    if not vectors:
        return 0
    return int(np.linalg.matrix_rank(np.array(vectors, dtype=float)))


def _solve_exact(gens, v):
    """Coefficients a with sum a_i gens_i = v, or None (gens linearly independent)."""
    k = len(gens)
    d = len(v)
    rows = [[Fraction(gens[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(d)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, d) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(d):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, d)):
        return None
    a = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        a[c] = rows[i][k]
    return a


def cone_contains(gens, v):
    """Exact membership of v in the simplicial cone spanned by ``gens``."""
    if not gens:
        return all(x == 0 for x in v)
    a = _solve_exact(list(gens), list(v))
    return a is not None and all(x >= 0 for x in a)


def _full_dim_pairs_ok(maximal, d):
    """Pairwise intersections of full-dimensional simplicial cones are common faces.

    For cones s, t the intersection in the coefficient space of s is
    {a >= 0, M a >= 0} with M = G_t^{-1} G_s.  Its extreme rays come from
    d-1 tight rows; all of them must be supported on the generators shared
    with t.
    """
    G = [np.array(g, dtype=float).T for _, g in maximal]
    Hinv = [np.linalg.inv(g) for g in G]
    gen_id = {}
    ids = [[gen_id.setdefault(tuple(v), len(gen_id)) for v in g] for _, g in maximal]
    pairs = list(itertools.combinations(range(len(maximal)), 2))
    if not pairs:
        return True
    C = np.empty((len(pairs), 2 * d, d))
    common = np.zeros((len(pairs), d), dtype=bool)
    for p, (i, j) in enumerate(pairs):
        C[p, :d] = np.eye(d)
        C[p, d:] = Hinv[j] @ G[i]
        shared = set(ids[j])
        common[p] = [g in shared for g in ids[i]]
    ok = np.ones(len(pairs), dtype=bool)
    for rows in itertools.combinations(range(2 * d), d - 1):
        sub = C[:, rows, :]
        r = np.empty((len(pairs), d))
        for col in range(d):
            keep = [c for c in range(d) if c != col]
            minor = sub[:, :, keep]
            r[:, col] = (-1) ** col * (np.linalg.det(minor) if d > 1 else 1.0)
        r = np.where(np.abs(r) < 1e-9, 0.0, r)
        nonzero = np.any(r != 0, axis=1)
        vals = np.einsum("pij,pj->pi", C, r)
        pos = np.all(vals >= -1e-9, axis=1)
        neg = np.all(vals <= 1e-9, axis=1)
        ray = np.where(pos[:, None], r, -r)
        is_ray = nonzero & (pos | neg)
        outside = np.any((np.abs(ray) > 1e-9) & ~common, axis=1)
        ok &= ~(is_ray & outside)
    return bool(ok.all())


def _generic_pair_ok(g1, g2, d):
    """Intersection test for arbitrary simplicial cones via linear programming."""
    from scipy.optimize import linprog

    s1, s2 = set(g1), set(g2)
    out1 = [i for i, v in enumerate(g1) if v not in s2]
    out2 = [i for i, v in enumerate(g2) if v not in s1]
    if not out1 and not out2:
        return True
    k1, k2 = len(g1), len(g2)
    A_eq = np.zeros((d + 1, k1 + k2))
    for i, v in enumerate(g1):
        A_eq[:d, i] = v
    for j, v in enumerate(g2):
        A_eq[:d, k1 + j] = -np.array(v)
    A_eq[d, [i for i in out1] + [k1 + j for j in out2]] = 1
    b_eq = np.zeros(d + 1)
    b_eq[d] = 1
    res = linprog(np.zeros(k1 + k2), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 2  # infeasible: no overlap beyond the shared face


@dataclass(frozen=True)
class FanReport:
    is_fan: bool
    smooth: bool
    complete: bool
    samples: int
    hits: int
    maximal_cones: int
    expected_maximal_cones: int = None


def _is_smooth_cone(gens, d):
    if not gens:
        return True
    if len(gens) == d:
        return abs(int_det(gens)) == 1
    try:
        extend_to_basis(gens, d)
    except PreconditionError:
        return False
    return True


def _random_rationals(rng, samples, d):
    num = rng.integers(-1000, 1001, size=(samples, d))
    den = 2 * rng.integers(0, 500, size=(samples, d)) + 1
    # common denominator per sample keeps the sign pattern of each coordinate
    L = np.lcm.reduce(den, axis=1) if d else np.ones(samples, dtype=np.int64)
    return num * (L[:, None] // den) if d else num


def fan_checks(fan, samples=10_000, seed=0):
    d = fan.rank
    cones = fan.cones
    simplicial = all(_rank(list(g)) == len(g) for _, g in cones)
    gen_sets = {frozenset(g) for _, g in cones}
    closed = all(
        frozenset(sub) in gen_sets
        for _, g in cones
        for r in range(len(g))
        for sub in itertools.combinations(g, r)
    )
    maximal = fan.maximal_cones()
    full = [c for c in maximal if len(c[1]) == d]
    if not simplicial or not closed:
        is_fan = False
    elif d > 0 and len(full) == len(maximal):
        is_fan = _full_dim_pairs_ok(maximal, d)
    else:
        is_fan = all(_generic_pair_ok(list(a[1]), list(b[1]), d)
                     for a, b in itertools.combinations(maximal, 2))
    smooth = all(_is_smooth_cone(list(g), d) for _, g in maximal)

    rng = np.random.default_rng(seed)
    if d == 0:
        hits = samples
    elif not full:
        hits = 0
    else:
        Y = _random_rationals(rng, samples, d)
        covered = np.zeros(samples, dtype=bool)
        for _, g in full:
            Hinv = np.linalg.inv(np.array(g, dtype=float).T)
            covered |= np.all(Y @ Hinv.T >= -1e-9, axis=1)
        hits = int(covered.sum())
    expected = math.factorial(len(fan.labels)) if fan.labels is not None else None
    complete = hits == samples and len(full) == len(maximal)
    if expected is not None:
        complete = complete and len(maximal) == expected
    return FanReport(is_fan, smooth, complete, samples, hits, len(maximal), expected)


# forgetful maps, sections, clutching --------------------------------------------


def _forget_partition(tau, B):
    B = frozenset(B)
    return OrderedPartition(tuple(p & B for p in tau.parts if p & B))


def _forget_matrix(Bp, B):
    Bp, B = _labels(Bp), _labels(B)
    cols = []
    for i in range(len(Bp) - 1):
        e = [0] * (len(Bp) - 1)
        e[i] = 1
        f = _lift(e, Bp)
        cols.append(_coords({b: f[b] for b in B}, B))
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(len(B) - 1))


def _apply(matrix, v, out_dim):
    return tuple(sum(matrix[i][j] * v[j] for j in range(len(v))) for i in range(out_dim))


@dataclass(frozen=True)
class ForgetfulMap:
    source: tuple
    target: tuple
    matrix: tuple
    verified: bool
    failures: tuple = ()

    def partition(self, tau):
        return _forget_partition(tau, self.target)

    def vector(self, v):
        return _apply(self.matrix, v, len(self.target) - 1)


def forgetful_map(Bp, B, fan_source=None):
    Bp, B = _labels(Bp), _labels(B)
    if not B or not set(B) <= set(Bp):
        raise PreconditionError(f"{set(B)} is not a nonempty subset of {set(Bp)}")
    M = _forget_matrix(Bp, B)
    fan_source = fan_source or build_fan(Bp)
    target = build_fan(B)
    failures = []
    for tau_p, gens in fan_source.cones:
        tau = _forget_partition(tau_p, B)
        tgt = target.cone(tau)
        for g in gens:
            if not cone_contains(tgt, _apply(M, g, len(B) - 1)):
                failures.append((tau_p, tau))
                break
    return ForgetfulMap(Bp, B, M, not failures, tuple(failures))


@dataclass(frozen=True)
class SectionMaps:
    labels: tuple
    new_point: str
    x0: OrderedPartition
    x_inf: OrderedPartition
    matrices: dict = field(compare=False)
    targets: dict = field(compare=False)
    verified: bool = True

    def s(self, j, v):
        return _apply(self.matrices[j], v, len(self.labels))


def _section_matrix(B, Bp, j):
    cols = []
    for i in range(len(B) - 1):
        e = [0] * (len(B) - 1)
        e[i] = 1
        f = _lift(e, B)
        g = dict(f)
        (new,) = set(Bp) - set(B)
        g[new] = f[j]
        cols.append(_coords(g, Bp))
    return tuple(tuple(cols[c][r] for c in range(len(cols))) for r in range(len(Bp) - 1))


def section_maps(B, Bp):
    """White sections x_0, x_inf and black sections s_j for a one-point extension."""
    B, Bp = _labels(B), _labels(Bp)
    extra = set(Bp) - set(B)
    if not set(B) <= set(Bp) or len(extra) != 1:
        raise PreconditionError("B' must add exactly one label to B")
    (new,) = extra
    x0 = OrderedPartition((frozenset([new]), frozenset(B)))
    x_inf = OrderedPartition((frozenset(B), frozenset([new])))
    fan_b, fan_bp = build_fan(B), build_fan(Bp)
    forget = _forget_matrix(Bp, B)
    matrices, targets, ok = {}, {}, True
    for j in B:
        S = _section_matrix(B, Bp, j)
        matrices[j] = S
        dB = len(B) - 1
        # forgetful after s_j is the identity
        for i in range(dB):
            e = tuple(int(i == k) for k in range(dB))
            if _apply(forget, _apply(S, e, len(Bp) - 1), dB) != e:
                ok = False
        for tau, gens in fan_b.cones:
            tgt = OrderedPartition(tuple(p | {new} if j in p else p for p in tau.parts))
            targets[(j, tau)] = tgt
            cone = fan_bp.cone(tgt)
            if not all(cone_contains(cone, _apply(S, g, len(Bp) - 1)) for g in gens):
                ok = False
            if tgt in (x0, x_inf):
                ok = False
    return SectionMaps(B, new, x0, x_inf, matrices, targets, ok)


def clutch(tau1, tau2):
    """Glue infinity of the first curve to 0 of the second: concatenate the parts."""
    overlap = set(tau1.labels) & set(tau2.labels)
    if overlap:
        raise PreconditionError(f"label sets overlap in {sorted(overlap)}")
    return OrderedPartition(tau1.parts + tau2.parts)


def orbit_count_poly(fan):
    """N(q) = sum over cones of (q - 1)^(rank - dim)."""
    t = Poly.var() - 1
    total = Poly.const(0)
    for _, gens in fan.cones:
        total = total + t ** (fan.rank - len(gens))
    return total


@dataclass(frozen=True)
class FiberChain:
    """Chain of P^1's over the stratum tau: one component per part, nodes between neighbours.

    ``component_strata`` and ``node_strata`` are the strata of L_{B'} meeting
    the fiber: the forgotten point added to a part, or inserted alone
    between two neighbouring parts.
    """

    tau: OrderedPartition
    point: str
    components: tuple
    nodes: tuple
    component_strata: tuple
    node_strata: tuple

    @property
    def length(self):
        return len(self.components)


def fiber_chain(tau, point):
    if point in tau.labels:
        raise PreconditionError(f"forgotten point {point!r} already labels tau")
    parts = tau.parts
    nodes = tuple((parts[i], parts[i + 1]) for i in range(len(parts) - 1))
    comp_strata = tuple(
        OrderedPartition(parts[:i] + (parts[i] | {point},) + parts[i + 1:]) for i in range(len(parts)))
    node_strata = tuple(
        OrderedPartition(parts[: i + 1] + (frozenset([point]),) + parts[i + 1:])
        for i in range(len(parts) - 1))
    return FiberChain(tau, point, parts, nodes, comp_strata, node_strata)


# text -------------------------------------------------------------------------

_LABEL = r"[A-Za-z0-9_]+"


def parse_labels(text):
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    labels = [x.strip() for x in body.split(",") if x.strip()]
    for lab in labels:
        if not re.fullmatch(_LABEL, lab):
            raise ParseError("malformed label", lab)
    if len(set(labels)) != len(labels):
        raise ParseError("repeated label", text)
    if not labels:
        raise ParseError("empty label set", text)
    return _labels(labels)


def parse_partition(text):
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("partition literal must be [{..},..]", text)
    inner = s[1:-1].strip()
    parts = re.findall(r"\{([^{}]*)\}", inner)
    rebuilt = ",".join("{" + p + "}" for p in parts)
    if re.sub(r"\s", "", inner) != re.sub(r"\s", "", rebuilt) or not parts:
        raise ParseError("malformed partition literal", text)
    parsed = []
    for p in parts:
        labels = [x.strip() for x in p.split(",")]
        for lab in labels:
            if not re.fullmatch(_LABEL, lab):
                raise ParseError("malformed label", lab)
        parsed.append(frozenset(labels))
    try:
        return OrderedPartition(tuple(parsed))
    except ValueError as exc:
        raise ParseError(str(exc), text) from None


def parse_fan(text):
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty fan", text)
    head = lines[0].strip()
    m = re.fullmatch(r"fan\{B=(\{[^}]*\})\}", head)
    if m:
        labels = parse_labels(m.group(1))
        rank = len(labels) - 1
    else:
        m = re.fullmatch(r"fan\{rank=(\d+)\}", head)
        if not m:
            raise ParseError("malformed fan header", head)
        labels, rank = None, int(m.group(1))
    cones = []
    for ln in lines[1:]:
        key, sep, vecs = ln.partition(" : ")
        if not sep:
            key, sep, vecs = ln.rstrip().partition(" :")
            if not sep:
                raise ParseError("malformed cone line", ln)
        key = key.strip()
        gens = tuple(tuple(int(x) for x in v.split(",")) if v else ()
                     for v in re.findall(r"\[([^\[\]]*)\]", vecs))
        if any(len(g) != rank for g in gens):
            raise ParseError("generator has the wrong dimension", ln)
        cones.append((parse_partition(key) if labels is not None else key, gens))
    return Fan(rank, tuple(cones), labels)
