"""Truncated big Witt vectors computed through ghost coordinates."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegralityError, ParseError
from .ring_core import CycloElem, Poly, _norm, parse_cyclo

__all__ = [
    "WittVector",
    "GhostVector",
    "FrobeniusReport",
    "truncation_set",
    "p_typical_set",
    "ghost",
    "inverse_ghost",
    "witt_ring_op",
    "teichmuller",
    "is_cyclotomic_point",
    "ghost_frobenius",
    "ghost_verschiebung",
    "restrict",
    "frobenius_lift_check",
    "parse_witt",
    "parse_ghost",
    "parse_coefficient",
]


def truncation_set(N):
    return tuple(range(1, N + 1))


def p_typical_set(p, k):
    return tuple(p**i for i in range(k + 1))


def _check_divisor_closed(S):
    members = set(S)
    for d in S:
        if d < 1:
            raise ValueError(f"truncation set entries must be positive, got {d}")
        for e in range(1, d):
            if d % e == 0 and e not in members:
                raise ValueError(f"truncation set is not divisor-closed: {e} | {d}")


def _describe(S):
    S = tuple(S)
    if S == truncation_set(len(S)):
        return f"N={len(S)}"
    if len(S) >= 2 and S == p_typical_set(S[1], len(S) - 1):
        return f"p={S[1]},k={len(S) - 1}"
    return "S=" + ",".join(map(str, S))


def _scalar(c):
    if isinstance(c, CycloElem):
        if c.conductor == 1:
            return c.coeffs[0]
        return c
    return _norm(c)


def _scalar_text(c):
    if isinstance(c, CycloElem):
        return c.format()
    return str(c)


@dataclass(frozen=True)
class WittVector:
    """Witt coordinates u_d indexed by a divisor-closed truncation set."""

    support: tuple
    coords: tuple

    def __post_init__(self):
        support = tuple(sorted(self.support))
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "coords", tuple(_scalar(c) for c in self.coords))
        if len(self.coords) != len(support):
            raise ValueError("one coordinate per truncation index required")
        _check_divisor_closed(support)

    @classmethod
    def of(cls, coords, S=None):
        coords = tuple(coords)
        return cls(S or truncation_set(len(coords)), coords)

    @classmethod
    def zero(cls, S):
        return cls(tuple(S), (0,) * len(S))

    def __getitem__(self, d):
        return self.coords[self.support.index(d)]

    @property
    def is_integral(self):
        return all(isinstance(c, int) for c in self.coords)

    def __add__(self, other):
        return witt_ring_op("add", self, other)

    def __mul__(self, other):
        return witt_ring_op("mul", self, other)

    def format(self):
        return f"witt{{{_describe(self.support)}}}[{','.join(map(_scalar_text, self.coords))}]"

    __str__ = format


@dataclass(frozen=True)
class GhostVector:
    support: tuple
    comps: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(self.support)))
        object.__setattr__(self, "comps", tuple(_scalar(c) for c in self.comps))
        if len(self.comps) != len(self.support):
            raise ValueError("one component per truncation index required")
        _check_divisor_closed(self.support)

    def __getitem__(self, n):
        return self.comps[self.support.index(n)]

    def format(self):
        return f"ghost{{{_describe(self.support)}}}[{','.join(map(_scalar_text, self.comps))}]"

    __str__ = format


def ghost(w):
    """q_n = sum over d | n of d * u_d^(n/d)."""
    comps = []
    for n in w.support:
        total = 0
        for d, u in zip(w.support, w.coords):
            if n % d == 0:
                total = total + d * u ** (n // d)
        comps.append(total)
    return GhostVector(w.support, tuple(comps))


def inverse_ghost(g):
    """Solve the ghost equations for u_n in increasing n."""
    coords = {}
    for n, qn in zip(g.support, g.comps):
        rest = 0
        for d in g.support:
            if d < n and n % d == 0:
                rest = rest + d * coords[d] ** (n // d)
        diff = qn - rest
        coords[n] = diff / n if isinstance(diff, CycloElem) else Fraction(diff) / n
    return WittVector(g.support, tuple(coords[n] for n in g.support))


def witt_ring_op(op, x, y):
    if x.support != y.support:
        raise ValueError(f"truncation mismatch: {_describe(x.support)} vs {_describe(y.support)}")
    gx, gy = ghost(x), ghost(y)
    if op == "add":
        comps = tuple(a + b for a, b in zip(gx.comps, gy.comps))
    elif op == "mul":
        comps = tuple(a * b for a, b in zip(gx.comps, gy.comps))
    else:
        raise ValueError(f"unknown Witt ring operation {op!r}")
    result = inverse_ghost(GhostVector(x.support, comps))
    if x.is_integral and y.is_integral and not result.is_integral:
        raise IntegralityError(f"Witt {op} of integral vectors gave {result.format()}")
    return result


def teichmuller(r, S):
    S = tuple(S)
    return WittVector(S, (r,) + (0,) * (len(S) - 1))


def _is_root_or_zero(c):
    if isinstance(c, CycloElem):
        return c.is_zero() or c.is_root_of_unity()
    return c in (0, 1, -1)


def is_cyclotomic_point(w):
    """Every ghost coordinate is 0 or a root of unity."""
    return all(_is_root_or_zero(c) for c in ghost(w).comps)


def ghost_frobenius(g, m):
    """F_m on ghost components: (F_m q)_n = q_{mn}, on the indices where mn is available."""
    members = set(g.support)
    S = tuple(n for n in g.support if n * m in members)
    return GhostVector(S, tuple(g[n * m] for n in S))


def ghost_verschiebung(g, m):
    """V_m on ghost components: (V_m q)_n = m q_{n/m} if m | n, else 0."""
    return GhostVector(g.support, tuple(m * g[n // m] if n % m == 0 else 0 for n in g.support))


def restrict(w, S):
    """Project to a divisor-closed subset of the truncation set."""
    S = tuple(sorted(S))
    return WittVector(S, tuple(w[d] for d in S))


# Frobenius lifts --------------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusReport:
    ring: str
    p: int
    psi: str
    samples: int
    literal_holds: bool  # psi(x) - x in pR
    standard_holds: bool  # psi(x) - x^p in pR
    literal_failures: tuple = ()
    standard_failures: tuple = ()


def _in_pR(x, p):
    if isinstance(x, Poly):
        return all(isinstance(c, int) and c % p == 0 for _, c in x.items())
    return x % p == 0


def frobenius_lift_check(ring, p, psi, samples):
    """Test psi(x) - x in pR and psi(x) - x^p in pR on every sample, reporting both."""
    if ring == "integers":
        if psi != "identity":
            raise ValueError("the only ring endomorphism of Z is the identity")
        apply = lambda x: x  # noqa: E731
    elif ring == "polynomials":
        q = Poly.var()
        if psi == "identity":
            apply = lambda f: f  # noqa: E731
        elif psi == "q->q^p":
            apply = lambda f: f.compose([q**p])  # noqa: E731
        else:
            raise ValueError(f"unknown map {psi!r}")
    else:
        raise ValueError(f"unknown ring {ring!r}")
    samples = list(samples)
    lit_bad = tuple(x for x in samples if not _in_pR(apply(x) - x, p))
    std_bad = tuple(x for x in samples if not _in_pR(apply(x) - x**p, p))
    return FrobeniusReport(ring, p, psi, len(samples), not lit_bad, not std_bad, lit_bad, std_bad)


# text -------------------------------------------------------------------------

_WITT_RE = re.compile(r"\s*(witt|ghost)\{([^}]*)\}\[(.*)\]\s*")


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _parse_scalar(tok):
    if tok.startswith("cyclo"):
        return parse_cyclo(tok)
    if not re.fullmatch(r"-?\d+(/\d+)?", tok):
        raise ParseError("malformed Witt coordinate", tok)
    value = Fraction(tok)
    return _norm(value)


def _parse_header(header):
    fields = {}
    for item in header.split(","):
        if "=" not in item:
            raise ParseError("malformed truncation header", header)
        key, _, val = item.partition("=")
        if not val.strip().isdigit():
            raise ParseError("truncation parameter must be a non-negative integer", val.strip())
        fields[key.strip()] = int(val)
    if set(fields) == {"N"}:
        if fields["N"] < 1:
            raise ParseError("N must be positive", header)
        return truncation_set(fields["N"])
    if set(fields) == {"p", "k"}:
        from .cyclotomic import _is_prime

        if not _is_prime(fields["p"]):
            raise ParseError("p must be prime", str(fields["p"]))
        return p_typical_set(fields["p"], fields["k"])
    raise ParseError("truncation header needs N=.. or p=..,k=..", header)


def _parse(text, kind):
    m = _WITT_RE.fullmatch(text)
    if not m or m.group(1) != kind:
        raise ParseError(f"malformed {kind} literal", text)
    S = _parse_header(m.group(2))
    coords = [_parse_scalar(t) for t in _split_top(m.group(3))] if m.group(3).strip() else []
    if len(coords) != len(S):
        raise ParseError(f"expected {len(S)} coordinates, got {len(coords)}", m.group(3))
    return S, coords


def parse_witt(text):
    S, coords = _parse(text, "witt")
    return WittVector(S, tuple(coords))


def parse_ghost(text):
    S, coords = _parse(text, "ghost")
    return GhostVector(S, tuple(coords))


def parse_coefficient(text):
    """Rational, cyclotomic literal, or root ``zeta(k/m)`` as a Witt base-ring element."""
    text = text.strip()
    if text.startswith("zeta"):
        from .cyclotomic import parse_root

        return parse_root(text).to_cyclo()
    if text.startswith("cyclo"):
        return parse_cyclo(text)
    return _parse_scalar(text)

