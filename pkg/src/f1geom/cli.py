"""Command line interface: ``f1geom <module> <verb> [literals] [flags]``.

Exit status is 0 on success, 1 on malformed input (the message names the
offending token) and 2 when a mathematical precondition fails.  With
``--format structured`` every output line is ``key=value``.
"""

from __future__ import annotations

import argparse
import sys

from . import counting, cyclotomic, habiro, monoid_scheme, profinite, toric_moduli, witt
from .errors import F1Error, IntegralityError, ParseError, PreconditionError
from .ring_core import Poly, parse_poly

__all__ = ["main", "build_parser", "run"]


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


# handlers return a list of (key, value) pairs ------------------------------------


def _cyclotomic(a):
    return [("phi", cyclotomic.cyclotomic_poly(_positive(a.n)).format())]


def _positive(n, what="n"):
    if n < 1:
        raise PreconditionError(f"{what} must be >= 1, got {n}")
    return n


def _qfact(a):
    if a.n < 0:
        raise PreconditionError(f"n must be >= 0, got {a.n}")
    return [("qfact", cyclotomic.q_factorial(a.n).format())]


def _adjacent(a):
    xi, eta = cyclotomic.parse_root(a.xi), cyclotomic.parse_root(a.eta)
    return [("adjacent", str(cyclotomic.adjacent(xi, eta)).lower())]


def _habiro_element(a):
    return habiro.parse_habiro(a.element, a.depth)


def _habiro_eval(a):
    f = _habiro_element(a)
    value = habiro.habiro_eval(f, habiro.parse_roots(a.zetas))
    return [("value", value.format())]


def _habiro_taylor(a):
    f = _habiro_element(a)
    jet = habiro.habiro_taylor(f, habiro.parse_roots(a.zetas), a.order)
    return [("jet", jet.format())]


def _habiro_inv(a):
    return [("element", habiro.habiro_q_inverse(_positive(a.depth, "depth")).format())]


def _habiro_kz(a):
    return [("element", habiro.kontsevich_zagier(_positive(a.depth, "depth")).format())]


def _habiro_radial(a):
    zeta = cyclotomic.parse_root(a.zeta)
    exps = range(1, a.kmax + 1)
    hs = [10.0**-k for k in exps]
    values = habiro.zagier_radial(zeta, [1 - h for h in hs], a.terms)
    out = [(f"r=1-1e-{k}", _complex(v)) for k, v in zip(exps, values)]
    out.append(("limit", _complex(habiro.kz_radial_limit(zeta, exps, a.terms))))
    return out


def _complex(z, digits=10):
    re_, im = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
    return f"{re_:.{digits}f}{'+' if im >= 0 else '-'}{abs(im):.{digits}f}i"


def _witt_ghost(a):
    return [("ghost", witt.ghost(witt.parse_witt(a.vector)).format())]


def _witt_unghost(a):
    return [("witt", witt.inverse_ghost(witt.parse_ghost(a.vector)).format())]


def _witt_binary(op):
    def handler(a):
        x, y = witt.parse_witt(a.x), witt.parse_witt(a.y)
        if x.support != y.support:
            raise PreconditionError("Witt vectors must share a truncation set")
        return [("witt", witt.witt_ring_op(op, x, y).format())]

    return handler


def _witt_teich(a):
    r = witt.parse_coefficient(a.r)
    if a.p is not None:
        S = witt.p_typical_set(a.p, a.k if a.k is not None else 3)
    else:
        S = witt.truncation_set(_positive(a.N, "N"))
    return [("witt", witt.teichmuller(r, S).format())]


def _witt_cyclo_check(a):
    w = witt.parse_witt(a.vector)
    return [("ghost", witt.ghost(w).format()), ("cyclotomic_point", str(witt.is_cyclotomic_point(w)).lower())]


def _monoid_spec(a):
    M = monoid_scheme.parse_monoid(a.monoid)
    sp = monoid_scheme.spec(M)
    out = [("points", str(len(sp.points))), ("generic", sp.generic_point().format())]
    out += [("closed", p.format()) for p in sp.closed_points()]
    out += [("prime", p.format()) for p in sp.points]
    return out


def _monoid_ring(a):
    M = monoid_scheme.parse_monoid(a.monoid)
    return [("ring", monoid_scheme.base_change(M).format())]


def _monoid_gl(a):
    M = monoid_scheme.parse_monoid(a.group)
    if not isinstance(M, monoid_scheme.Cyclic):
        raise PreconditionError(f"coefficients must be a cyclic group Z/m, got {a.group}")
    pts = monoid_scheme.gl_points(_positive(a.n), M)
    out = [("count", str(len(pts)))]
    if a.list:
        out += [("matrix", _matrix_text(g)) for g in pts]
    return out


def _matrix_text(g):
    return "[" + "; ".join(" ".join(row) for row in g.rows()) + "]"


def _moduli_fan(a):
    fan = toric_moduli.build_fan(toric_moduli.parse_labels(a.labels))
    return [("fan", fan.format())]


def _moduli_check(a):
    fan = toric_moduli.build_fan(toric_moduli.parse_labels(a.labels))
    r = toric_moduli.fan_checks(fan, a.samples, a.seed)
    return [
        ("is_fan", str(r.is_fan).lower()),
        ("smooth", str(r.smooth).lower()),
        ("complete", str(r.complete).lower()),
        ("samples", str(r.samples)),
        ("hits", str(r.hits)),
        ("maximal_cones", str(r.maximal_cones)),
        ("expected_maximal_cones", str(r.expected_maximal_cones)),
    ]


def _moduli_forget(a):
    tau = toric_moduli.parse_partition(a.partition)
    B = toric_moduli.parse_labels(a.labels)
    fm = toric_moduli.forgetful_map(tau.labels, B)
    return [("image", fm.partition(tau).format()), ("cones_map_into_cones", str(fm.verified).lower())]


def _moduli_clutch(a):
    t1, t2 = toric_moduli.parse_partition(a.first), toric_moduli.parse_partition(a.second)
    return [("stratum", toric_moduli.clutch(t1, t2).format())]


def _moduli_count(a):
    fan = toric_moduli.build_fan(toric_moduli.parse_labels(a.labels))
    return [("count", toric_moduli.orbit_count_poly(fan).format())]


def _count_qbinom(a):
    return [("qbinom", counting.gaussian_binomial(a.n, a.j).format())]


def _integer_poly(text):
    p = parse_poly(text)
    if p.nvars != 1:
        raise ParseError("expected a univariate polynomial", text)
    return p


def _count_zeta(a):
    return [("zeta", counting.zeta_f1(_integer_poly(a.poly)).format())]


def _hilbert(text):
    H = parse_poly(text, ["n"]) if "n" in text else _integer_poly(text)
    return counting.HilbertData(Poly(dict(H.items()), 1))


def _count_rv(a):
    r = counting.rv_check(_hilbert(a.hilbert), a.tolerance)
    return [
        ("P", r.P.format(["t"])),
        ("d", str(r.d)),
        ("e", str(r.e)),
        ("unit_circle", str(r.unit_circle).lower()),
        ("integer_roots", ",".join(map(str, r.integer_roots_found))),
        ("middle_line", f"{r.middle_line:g}"),
        ("on_middle_line", str(len(r.on_middle_line))),
        ("unexplained", str(len(r.unexplained_roots))),
        ("consistent", str(r.consistent).lower()),
    ]


def _count_fe(a):
    return [("functional_equation", str(counting.functional_eq_check(_hilbert(a.hilbert).H)).lower())]


def _profinite_digits(a):
    x = profinite.parse_profinite(a.x)
    return [("digits", "pf[" + ",".join(map(str, profinite.digits(x))) + "]"), ("value", x.format())]


def _profinite_binary(op):
    def handler(a):
        x, y = profinite.parse_profinite(a.x), profinite.parse_profinite(a.y)
        return [("value", profinite.profinite_arith(op, x, y).format())]

    return handler


def _profinite_fib(a):
    x = profinite.parse_profinite(a.x)
    u = profinite.profinite_fibonacci(x)
    return [("value", u.format()), ("period", str(profinite.pisano(u.modulus)))]


def _selftest(a):
    from .selftest import SUITES, run_suites

    if a.suite != "all" and a.suite not in SUITES:
        raise ParseError(f"unknown suite; choose from all, {', '.join(SUITES)}", a.suite)
    results = run_suites(a.suite, a.seed)
    out = [
        (f"{r.suite}.{r.name}", f"samples={r.samples} {'pass' if r.passed else 'FAIL'}")
        for r in results
    ]
    failed = sum(not r.passed for r in results)
    out.append(("summary", f"{len(results) - failed} passed, {failed} failed"))
    return out, (3 if failed else 0)


# parser -------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--format", choices=["text", "structured"], default=argparse.SUPPRESS)
    p.add_argument("--depth", type=_int, default=argparse.SUPPRESS)
    p.add_argument("--tolerance", type=float, default=argparse.SUPPRESS)
    p.add_argument("--seed", type=_int, default=argparse.SUPPRESS)


def build_parser():
    parser = _Parser(prog="f1geom", description="Exact computations for geometry over F_1.")
    _add_common(parser)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(container, name, handler, help_text):
        p = container.add_parser(name, help=help_text)
        _add_common(p)
        p.set_defaults(handler=handler)
        return p

    def group(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    leaf(sub, "cyclotomic", _cyclotomic, "cyclotomic polynomial Phi_n").add_argument("n", type=_int)
    leaf(sub, "qfact", _qfact, "q-factorial {n}_q!").add_argument("n", type=_int)
    p = leaf(sub, "adjacent", _adjacent, "adjacency of two roots of unity")
    p.add_argument("xi")
    p.add_argument("eta")

    h = group("habiro", "Habiro ring elements")
    p = leaf(h, "eval", _habiro_eval, "evaluate at roots of unity")
    p.add_argument("element")
    p.add_argument("zetas", nargs="+")
    p = leaf(h, "taylor", _habiro_taylor, "Taylor jet at roots of unity")
    p.add_argument("element")
    p.add_argument("zetas", nargs="+")
    p.add_argument("--order", type=_int, default=3)
    leaf(h, "inv", _habiro_inv, "the inverse of q")
    leaf(h, "kz", _habiro_kz, "the Kontsevich-Zagier element")
    p = leaf(h, "radial", _habiro_radial, "radial limit of the half theta series")
    p.add_argument("zeta")
    p.add_argument("--kmax", type=_int, default=6)
    p.add_argument("--terms", type=_int, default=None)

    w = group("witt", "big Witt vectors")
    leaf(w, "ghost", _witt_ghost, "ghost components").add_argument("vector")
    leaf(w, "unghost", _witt_unghost, "Witt coordinates from ghost components").add_argument("vector")
    for verb, op in (("add", "add"), ("mul", "mul")):
        p = leaf(w, verb, _witt_binary(op), f"Witt {verb}")
        p.add_argument("x")
        p.add_argument("y")
    p = leaf(w, "teich", _witt_teich, "Teichmuller lift")
    p.add_argument("r")
    p.add_argument("--N", type=_int, default=3)
    p.add_argument("--p", type=_int, default=None)
    p.add_argument("--k", type=_int, default=None)
    leaf(w, "cyclo-check", _witt_cyclo_check, "is every ghost component 0 or a root of unity").add_argument("vector")

    m = group("monoid", "monoid schemes")
    leaf(m, "spec", _monoid_spec, "prime ideals").add_argument("monoid")
    leaf(m, "ring", _monoid_ring, "monoid ring presentation").add_argument("monoid")
    p = leaf(m, "gl", _monoid_gl, "monomial matrices over Z/m")
    p.add_argument("n", type=_int)
    p.add_argument("group")
    p.add_argument("--list", action="store_true")

    mo = group("moduli", "permutohedral moduli fans")
    leaf(mo, "fan", _moduli_fan, "the fan of L_B").add_argument("labels")
    p = leaf(mo, "check", _moduli_check, "fan, smoothness and completeness checks")
    p.add_argument("labels")
    p.add_argument("--samples", type=_int, default=10_000)
    p = leaf(mo, "forget", _moduli_forget, "forget labels")
    p.add_argument("partition")
    p.add_argument("labels")
    p = leaf(mo, "clutch", _moduli_clutch, "clutch two strata")
    p.add_argument("first")
    p.add_argument("second")
    leaf(mo, "count", _moduli_count, "torus orbit counting polynomial").add_argument("labels")

    c = group("count", "F_1 point counting")
    p = leaf(c, "qbinom", _count_qbinom, "Gaussian binomial")
    p.add_argument("n", type=_int)
    p.add_argument("j", type=_int)
    leaf(c, "zeta", _count_zeta, "zeta function of a counting polynomial").add_argument("poly")
    leaf(c, "rv", _count_rv, "Rodriguez-Villegas check of a Hilbert polynomial").add_argument("hilbert")
    leaf(c, "fe", _count_fe, "functional equation H(-1-s) = +-H(s)").add_argument("hilbert")

    pf = group("profinite", "profinite integers")
    leaf(pf, "digits", _profinite_digits, "factorial digits").add_argument("x")
    for verb in ("add", "mul"):
        p = leaf(pf, verb, _profinite_binary(verb), f"profinite {verb}")
        p.add_argument("x")
        p.add_argument("y")
    leaf(pf, "fib", _profinite_fib, "profinite Fibonacci number").add_argument("x")

    p = leaf(sub, "selftest", _selftest, "run invariant suites")
    p.add_argument("suite", nargs="?", default="all")
    return parser


_DEFAULTS = {"format": "text", "depth": None, "tolerance": 1e-9, "seed": 0}


def _render(pairs, fmt):
    lines = []
    for key, value in pairs:
        if fmt == "structured":
            lines += [f"{key}={line}" for line in value.splitlines() or [""]]
        elif len(pairs) == 1:
            lines.append(value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def run(argv):
    """Run the CLI on ``argv``; returns (exit status, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
    except _ArgError as exc:
        return 1, "", f"error: {exc}\n"
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        result = args.handler(args)
    except ParseError as exc:
        return 1, "", f"parse error: {exc}\n"
    except (PreconditionError, IntegralityError) as exc:
        return 2, "", f"precondition failed: {exc}\n"
    except F1Error as exc:
        return 2, "", f"error: {exc}\n"
    except ValueError as exc:
        return 1, "", f"invalid input: {exc}\n"
    status = 0
    if isinstance(result, tuple):
        result, status = result
    return status, _render(result, args.format), ""


def main(argv=None):
    status, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
