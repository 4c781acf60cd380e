"""Command-line driver: ``cuspfoliate <command> <jobfile> [--json] [--verify-report FILE]``.

Job files are INI documents::

    [variables]
    names = x, y

    [definitions]
    f = y^2 + x^3
    w = 2*x*dy - 3*y*dx

    [params]
    form = w
    poly = f

Spec-based commands read ``[spec]`` (``p``, ``q``, ``roots``,
``multiplicities``) and ``[G]`` (``terms = a b c; ...`` or ``expr`` in the
variables ``psi, z``). Exit codes: 0 passed, 1 evaluated false, 2 input
error, 3 unsupported case.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import errors
from .algebra.poly import SparsePoly
from .algebra.weights import find_quasihomogeneous_weights, weighted_valuation
from .cuspidal import (
    GPoly,
    assemble_generator,
    build_cuspidal_spec,
    cuspidal_decompose,
    expand_phi,
    expand_psi,
    singular_locus,
    surface,
)
from .forms import (
    DiffForm,
    exterior_derivative,
    is_integrable,
    is_logarithmic_meromorphic,
    log_quotient,
    saito_decompose,
    saito_free_basis_check,
    wedge,
)
from .parser import ParseError, format_rational, parse_expr, parse_poly
from .resolution import gs_condition, loray_condition_2d, resolve

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3

COMMANDS = (
    "check-integrable",
    "check-logarithmic",
    "saito-decompose",
    "saito-basis",
    "cusp-decompose",
    "assemble",
    "resolve",
    "gs-condition",
    "valuation",
    "weights",
    "loray-2d",
)


class InputError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    objects: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    status: int = EXIT_OK

    def verdict(self, name, holds, details=""):
        self.verdicts.append({"name": name, "holds": bool(holds), "details": details})
        self.lines.append(f"[{'PASS' if holds else 'FAIL'}] {name}" + (f": {details}" if details else ""))

    def obj(self, name, value):
        text = str(value)
        self.objects.append({"name": name, "text": text})
        self.lines.append(f"{name} = {text}")

    def as_json(self):
        return {"command": self.command, "inputs": self.inputs,
                "verdicts": self.verdicts, "objects": self.objects}


# -- job files -----------------------------------------------------------------


class Job:
    def __init__(self, path):
        cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
        cp.optionxform = str
        try:
            with open(path, encoding="utf-8") as fh:
                cp.read_file(fh)
        except OSError as exc:
            raise InputError(f"cannot read job file: {exc}") from None
        except configparser.Error as exc:
            raise InputError(f"malformed job file: {exc}") from None
        self.cp = cp
        names = cp.get("variables", "names", fallback=None)
        if names is None:
            self.variables = ("x", "y", "z") if cp.has_section("spec") else None
        else:
            self.variables = tuple(v.strip() for v in names.replace(",", " ").split() if v.strip())
        self.env: dict = {}
        if cp.has_section("definitions"):
            if self.variables is None:
                raise InputError("[definitions] needs [variables] names")
            for key, text in cp.items("definitions"):
                self.env[key] = self.parse(text, f"definition {key!r}")

    def parse(self, text, what):
        try:
            return parse_expr(text, self.variables, self.env)
        except ParseError as exc:
            raise InputError(f"{what}: {exc}") from None

    def param(self, key, default=None, required=True):
        if self.cp.has_option("params", key):
            return self.cp.get("params", key).strip()
        if default is not None or not required:
            return default
        raise InputError(f"missing [params] {key}")

    def poly(self, key):
        text = self.param(key)
        v = self.parse(text, f"[params] {key}")
        if not isinstance(v, SparsePoly):
            raise InputError(f"[params] {key} must be a polynomial")
        return v

    def form(self, key="form"):
        text = self.param(key)
        v = self.parse(text, f"[params] {key}")
        if isinstance(v, SparsePoly) and v.is_zero:
            return DiffForm.zero(self.variables, 1)
        if not isinstance(v, DiffForm):
            raise InputError(f"[params] {key} must be a differential form")
        return v

    def items(self, key):
        text = self.param(key)
        return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]

    def integer(self, key, default=None):
        text = self.param(key, None if default is None else str(default))
        try:
            return int(text)
        except ValueError:
            raise InputError(f"[params] {key} must be an integer, got {text!r}") from None

    def spec(self):
        if not self.cp.has_section("spec"):
            raise InputError("missing [spec] section")
        s = self.cp["spec"]
        try:
            p, q = int(s["p"]), int(s["q"])
            roots = [Fraction(t.strip()) for t in s["roots"].split(",") if t.strip()]
            mult = [int(t) for t in s["multiplicities"].split(",") if t.strip()]
        except KeyError as exc:
            raise InputError(f"[spec] is missing {exc}") from None
        except ValueError as exc:
            raise InputError(f"[spec] has a malformed value: {exc}") from None
        return build_cuspidal_spec(p, q, roots, mult)

    def G(self):
        if not self.cp.has_section("G"):
            return GPoly()
        g = self.cp["G"]
        if "expr" in g:
            try:
                return GPoly.from_poly(parse_poly(g["expr"], ("psi", "z")))
            except ParseError as exc:
                raise InputError(f"[G] expr: {exc}") from None
        terms = []
        for chunk in g.get("terms", "").split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = chunk.split()
            if len(parts) != 3:
                raise InputError(f"[G] term {chunk!r} must be 'alpha beta coefficient'")
            try:
                terms.append((int(parts[0]), int(parts[1]), Fraction(parts[2])))
            except ValueError:
                raise InputError(f"[G] term {chunk!r} is malformed") from None
        return GPoly.from_terms(terms)


# -- commands -------------------------------------------------------------------


def cmd_check_integrable(job, rep):
    w = job.form()
    rep.inputs["form"] = str(w)
    w3 = wedge(w, exterior_derivative(w))
    rep.obj("omega ^ d omega", w3)
    ok = w3.is_zero
    rep.verdict("Frobenius integrability omega ^ d omega = 0", ok)
    rep.status = EXIT_OK if ok else EXIT_FALSE


def cmd_check_logarithmic(job, rep):
    w = job.form()
    f = job.poly("poly")
    rep.inputs.update(form=str(w), poly=str(f))
    den_text = job.param("denominator", required=False)
    if den_text:
        den = job.poly("denominator")
        rep.inputs["denominator"] = str(den)
        a = is_logarithmic_meromorphic(w, den, f, via="differential")
        b = is_logarithmic_meromorphic(w, den, f, via="wedge")
        rep.verdict("logarithmic: f*mu and f*d(mu) holomorphic", a)
        rep.verdict("logarithmic: f*mu and df ^ mu holomorphic", b)
        rep.verdict("the two logarithmic criteria agree", a == b)
        rep.status = EXIT_OK if a and b else EXIT_FALSE
        return
    ok, eta = log_quotient(w, f)
    rep.verdict("separatrix criterion: f divides omega ^ df", ok)
    if ok:
        rep.obj("eta (omega ^ df = f eta)", eta)
    rep.status = EXIT_OK if ok else EXIT_FALSE


def cmd_saito_decompose(job, rep):
    w = job.form()
    f = job.poly("poly")
    rep.inputs.update(form=str(w), poly=str(f))
    factors = None
    if job.param("factors", required=False):
        factors = [job.parse(t, "[params] factors") for t in job.items("factors")]
        rep.inputs["factors"] = ", ".join(str(g) for g in factors)
    try:
        t = saito_decompose(w, f, factors)
    except errors.NotLogarithmic as exc:
        rep.verdict("Saito criterion precondition: omega logarithmic along f", False, str(exc))
        rep.status = EXIT_FALSE
        return
    rep.obj("g", t.g)
    rep.obj("h", t.h)
    rep.obj("alpha", t.alpha)
    rep.obj("direction", ",".join(map(str, t.direction)) or "trivial")
    rep.verdict("Saito identity g*omega + h*df = f*alpha", t.residual(w, f).is_zero)


def cmd_saito_basis(job, rep):
    f = job.poly("poly")
    forms = []
    for t in job.items("forms"):
        v = job.parse(t, "[params] forms")
        if not isinstance(v, DiffForm):
            raise InputError(f"[params] forms entry {t!r} is not a form")
        forms.append(v)
    rep.inputs.update(poly=str(f), forms="; ".join(str(v) for v in forms))
    try:
        res = saito_free_basis_check(forms, f)
    except errors.NotFree as exc:
        rep.verdict("free basis criterion", False, str(exc))
        rep.status = EXIT_FALSE
        return
    except errors.NotLogarithmic as exc:
        rep.verdict("free basis criterion", False, str(exc))
        rep.status = EXIT_FALSE
        return
    rep.obj("U", res.U)
    rep.verdict("free basis criterion: U is a unit", res.is_unit,
                f"U = {res.U}, {'unit' if res.is_unit else 'not a unit'}")
    rep.status = EXIT_OK if res.is_unit else EXIT_FALSE


def cmd_cusp_decompose(job, rep):
    w = job.form()
    phi = job.poly("phi")
    k = job.integer("k", 2)
    rep.inputs.update(form=str(w), phi=str(phi), k=str(k))
    try:
        dec = cuspidal_decompose(w, k, phi)
    except errors.OrderViolation as exc:
        rep.verdict("cuspidal decomposition unit test G_1/phi_x1", False, str(exc))
        rep.status = EXIT_FALSE
        return
    except errors.NotLogarithmic as exc:
        rep.verdict("cuspidal decomposition precondition: omega logarithmic", False, str(exc))
        rep.status = EXIT_FALSE
        return
    rep.obj("U", dec.U)
    rep.obj("H", dec.H)
    rep.obj("omega3", dec.omega3)
    rep.obj("D", dec.denominator)
    rep.obj("pivot", dec.pivot)
    rep.verdict("cuspidal decomposition U*omega = D*omega_1 + H*omega_2 + f*omega_3",
                dec.residual(w).is_zero)
    rep.verdict("U/D is a unit", dec.is_unit, f"G_1/phi_{dec.pivot} = {dec.unit_factor}")


def _spec_inputs(rep, spec, G):
    rep.inputs["spec"] = str(spec)
    rep.inputs["G"] = str(G)


def cmd_assemble(job, rep):
    spec, G = job.spec(), job.G()
    _spec_inputs(rep, spec, G)
    w = assemble_generator(spec, G)
    f = surface(spec)
    rep.obj("Psi", expand_psi(spec))
    rep.obj("phi", expand_phi(spec))
    rep.obj("omega", w)
    for key in ("delta", "r", "d", "dprime", "m", "n", "P", "Q", "a_exp", "b_exp"):
        rep.obj(key, getattr(spec, key))
    rep.obj("singular locus", singular_locus(spec))
    integ = is_integrable(w)
    log = log_quotient(w, f)[0]
    rep.verdict("generator is integrable (omega ^ d omega = 0)", integ)
    rep.verdict("generator is logarithmic along z^2 + phi", log)
    rep.status = EXIT_OK if integ and log else EXIT_FALSE


def cmd_resolve(job, rep):
    spec, G = job.spec(), job.G()
    _spec_inputs(rep, spec, G)
    reports = resolve(spec, G)
    for r in reports:
        rep.lines.append(f"== {r.label} ==")
        rep.obj(f"{r.label} chart", r.chart.describe())
        rep.obj(f"{r.label} surface multiplicity", ",".join(map(str, r.surface_multiplicity)))
        rep.obj(f"{r.label} form multiplicity", ",".join(map(str, r.form_multiplicity)))
        rep.obj(f"{r.label} strict surface", r.surface)
        for name, holds in r.verdicts:
            rep.verdict(name, holds)
        if r.display_matches_actual is not None:
            rep.obj(f"{r.label} displayed bracket equals actual strict transform", r.display_matches_actual)
    rep.obj("final surface", reports[-1].surface)


def cmd_gs_condition(job, rep):
    spec, G = job.spec(), job.G()
    _spec_inputs(rep, spec, G)
    v = gs_condition(spec, G)
    for a, b, val, ineq in v.table:
        rep.obj(f"nu(Psi^{a} z^{b})", format_rational(val))
        rep.obj(f"2*alpha + beta >= r - 2 for ({a},{b})", ineq.sufficient)
    rep.verdict("generalized surface condition nu_(2,r)(G) >= (r-2)/gcd(2,r)", v.satisfied, v.text())
    rep.status = EXIT_OK if v.satisfied else EXIT_FALSE


def cmd_valuation(job, rep):
    f = job.poly("poly")
    p, q = job.integer("p"), job.integer("q")
    rep.inputs.update(poly=str(f), p=str(p), q=str(q))
    rep.obj("nu_(p,q)", format_rational(weighted_valuation(f, p, q)))
    rep.obj("order at origin", f.order())


def cmd_weights(job, rep):
    f = job.poly("poly")
    rep.inputs["poly"] = str(f)
    w = find_quasihomogeneous_weights(f)
    if w is None:
        rep.verdict("quasi-homogeneous", False, "no positive weight vector")
        rep.status = EXIT_FALSE
        return
    rep.obj("weights", ",".join(map(str, w.weights)))
    rep.obj("degree", w.degree)
    rep.verdict("quasi-homogeneous (Euler identity sum w_i x_i df/dx_i = d f)", True)


def cmd_loray_2d(job, rep):
    p, q = job.integer("p"), job.integer("q")
    delta = job.poly("delta")
    rep.inputs.update(p=str(p), q=str(q), delta=str(delta))
    v = loray_condition_2d(p, q, delta)
    rep.obj("omega", v.form)
    rep.verdict("dimension-two condition nu_(p,q)(Delta) > (p-1)(q-1)/delta", v.satisfied, v.text())
    rep.status = EXIT_OK if v.satisfied else EXIT_FALSE


HANDLERS = {
    "check-integrable": cmd_check_integrable,
    "check-logarithmic": cmd_check_logarithmic,
    "saito-decompose": cmd_saito_decompose,
    "saito-basis": cmd_saito_basis,
    "cusp-decompose": cmd_cusp_decompose,
    "assemble": cmd_assemble,
    "resolve": cmd_resolve,
    "gs-condition": cmd_gs_condition,
    "valuation": cmd_valuation,
    "weights": cmd_weights,
    "loray-2d": cmd_loray_2d,
}


def run(command: str, jobfile: str) -> Report:
    """Run one command; the report's ``status`` is the exit code."""
    rep = Report(command)
    try:
        job = Job(jobfile)
        if command not in ("assemble", "resolve", "gs-condition") and job.variables is None:
            raise InputError("missing [variables] names")
        HANDLERS[command](job, rep)
    except InputError as exc:
        rep.lines.append(f"input error: {exc}")
        rep.status = EXIT_INPUT
    except (errors.UnsupportedParity, errors.NegativeExponent, errors.ReducibleModulus,
            errors.SearchBudgetExceeded) as exc:
        rep.lines.append(f"unsupported: {exc}")
        rep.status = EXIT_UNSUPPORTED
    except (ParseError, errors.DomainError, errors.DuplicateRoot, errors.UndefinedOrder,
            ValueError, ZeroDivisionError) as exc:
        rep.lines.append(f"input error: {exc}")
        rep.status = EXIT_INPUT
    except errors.CuspfoliateError as exc:
        # a verified identity failed (ConsistencyError) or a check refused its input
        rep.verdict(type(exc).__name__, False, str(exc))
        rep.status = EXIT_FALSE
    except (RecursionError, KeyError, TypeError) as exc:
        rep.lines.append(f"input error: cannot process job ({type(exc).__name__}: {exc})")
        rep.status = EXIT_INPUT
    return rep


def _verify(rep: Report, path: str) -> tuple[bool, list[str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            old = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return False, [f"cannot read report: {exc}"]
    new = rep.as_json()
    problems = []
    if old.get("command") != new["command"]:
        problems.append(f"command differs: {old.get('command')} vs {new['command']}")
    want = [(v.get("name"), v.get("holds")) for v in old.get("verdicts", [])]
    got = [(v["name"], v["holds"]) for v in new["verdicts"]]
    if want != got:
        problems.append("verdicts differ")
    want_o = [(o.get("name"), o.get("text")) for o in old.get("objects", [])]
    got_o = [(o["name"], o["text"]) for o in new["objects"]]
    if want_o != got_o:
        problems.append("objects differ")
    return not problems, problems


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="cuspfoliate", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("jobfile")
    ap.add_argument("--json", action="store_true", help="print the machine-readable report")
    ap.add_argument("--verify-report", metavar="FILE",
                    help="re-run and check that FILE (a --json report) is reproduced")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = run(args.command, args.jobfile)
    if args.verify_report:
        ok, problems = _verify(rep, args.verify_report)
        print("report reproduced" if ok else "report NOT reproduced: " + "; ".join(problems))
        return EXIT_OK if ok else EXIT_FALSE
    if args.json:
        print(json.dumps(rep.as_json(), indent=2, sort_keys=False))
    else:
        print(f"cuspfoliate {args.command}")
        for line in rep.lines:
            print(line)
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
