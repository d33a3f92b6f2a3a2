"""Serialising solutions and re-checking serialised certificates.

A certificate is a JSON document (``"schema": 1``) holding the group
generators, the 2n generator functions, the bracket table, invariance flags,
the independence witness, and the recorded conventions and discrepancies.
``check_certificate`` trusts none of the recorded verdicts: it rebuilds the
group from its spec string, recomputes every bracket and invariance test, and
re-evaluates the witness determinant.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import CycRat
from .errors import PoissonNoetherError
from .expr import parse_ratfn
from .group import DEFAULT_ORDER_BOUND, GroupAction, LinMat, act, group_from_spec, parse_group_spec
from .invariants import INDEPENDENT, IndependenceWitness, recheck_witness
from .noether import NoetherSolution, canonical_value, generator_names
from .poisson import bracket
from .ratfunc import RatFn

__all__ = [
    "SCHEMA_VERSION",
    "CheckResult",
    "check_certificate",
    "dumps",
    "to_certificate",
    "to_latex",
    "to_text",
]

SCHEMA_VERSION = 1


def to_certificate(solution: NoetherSolution, spec: str, seed: int = 0) -> dict:
    report = solution.report
    action = solution.action
    return {
        "schema": SCHEMA_VERSION,
        "group": {
            "spec": spec,
            "name": action.name,
            "rank": action.rank,
            "mode": action.mode.value,
            "order": action.order,
            "generators": [g.to_json() for g in action.generators],
        },
        "generators": {
            "xprime": [f.to_json() for f in solution.xprime],
            "yprime": [f.to_json() for f in solution.yprime],
        },
        "bracket_table": [
            [{"value": e.value.to_json(), "expected": e.expected, "pass": e.passed} for e in row]
            for row in report.bracket_table
        ],
        "invariance_flags": [list(f) for f in report.invariance_flags],
        "independence": report.independence.to_json() if report.independence else None,
        "conventions": report.conventions,
        "discrepancies": list(report.discrepancies),
        "generation": report.generation,
        "seed": seed,
    }


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2, ensure_ascii=False) + "\n"


# -- re-checking ------------------------------------------------------------------


@dataclass
class CheckResult:
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, entry: str, why: str):
        self.failures.append(entry)
        self.notes.append(f"{entry}: {why}")


def _short(f: RatFn, limit: int = 80) -> str:
    text = f.to_text()
    return text if len(text) <= limit else text[: limit - 3] + "..."


def _ratfn(data, rank: int) -> RatFn:
    return parse_ratfn(data["num"], rank) / parse_ratfn(data["den"], rank)


def _witness(data) -> IndependenceWitness | None:
    if not data:
        return None
    return IndependenceWitness(
        data["status"],
        tuple(Fraction(p) for p in data["point"]),
        _scalar(data["determinant"]),
        int(data["attempts"]),
        int(data["seed"]),
    )


def _scalar(text: str) -> CycRat:
    value = parse_ratfn(text, 0)
    if not value.is_constant():
        raise ValueError(f"{text!r} is not a scalar")
    return value.constant_value()


def check_certificate(cert: dict, bound: int = DEFAULT_ORDER_BOUND) -> CheckResult:
    """Recompute every recorded claim; the result lists each failing entry."""
    res = CheckResult()
    if cert.get("schema") != SCHEMA_VERSION:
        res.fail("schema", f"unsupported schema {cert.get('schema')!r}")
        return res
    try:
        g = cert["group"]
        rank = int(g["rank"])
        canonical = group_from_spec(parse_group_spec(g["spec"]), bound)
        recorded = tuple(LinMat.from_json(m) for m in g["generators"])
        xs = [_ratfn(d, rank) for d in cert["generators"]["xprime"]]
        ys = [_ratfn(d, rank) for d in cert["generators"]["yprime"]]
    except (KeyError, TypeError, ValueError, PoissonNoetherError) as exc:
        res.fail("format", str(exc))
        return res
    if canonical.rank != rank or len(xs) != rank or len(ys) != rank:
        res.fail("group", "rank does not match the group spec")
        return res
    if recorded != canonical.generators or g.get("mode") != canonical.mode.value:
        res.fail("group", "recorded generator matrices differ from the catalog group")
    if g.get("order") != canonical.order:
        res.fail("group", f"recorded order {g.get('order')} but closure has {canonical.order}")
    action = GroupAction(rank, canonical.mode, recorded, canonical.elements, canonical.name, canonical.family)

    names = generator_names(rank)
    gens = xs + ys
    table = cert.get("bracket_table") or []
    upper = {(a, b): bracket(gens[a], gens[b]) for a in range(2 * rank) for b in range(a, 2 * rank)}
    for a in range(2 * rank):
        for b in range(2 * rank):
            entry = f"bracket[{names[a]}, {names[b]}]"
            expected = canonical_value(a, b, rank)
            value = upper[(a, b)] if a <= b else -upper[(b, a)]
            if not value == expected:
                res.fail(entry, f"recomputed value {_short(value)} is not {expected}")
                continue
            try:
                rec = table[a][b]
                rec_value = _ratfn(rec["value"], rank)
            except (IndexError, KeyError, TypeError, ValueError, PoissonNoetherError):
                res.fail(entry, "missing or unreadable recorded entry")
                continue
            if rec.get("expected") != expected or rec.get("pass") is not True or not rec_value == value:
                res.fail(entry, "recorded entry disagrees with the recomputation")

    flags = cert.get("invariance_flags") or []
    for i, (name, f) in enumerate(zip(names, gens)):
        for k, gen in enumerate(action.generators, 1):
            entry = f"invariance[{name}, g{k}]"
            if not act(gen, f, action) == f:
                res.fail(entry, "generator image differs")
                continue
            try:
                if flags[i][k - 1] is not True:
                    res.fail(entry, "recorded flag disagrees with the recomputation")
            except (IndexError, TypeError):
                res.fail(entry, "missing recorded flag")

    try:
        witness = _witness(cert.get("independence"))
    except (KeyError, TypeError, ValueError, PoissonNoetherError) as exc:
        res.fail("independence", f"unreadable witness: {exc}")
        return res
    if witness is None or witness.status != INDEPENDENT:
        res.fail("independence", "no independence witness recorded")
    elif not recheck_witness(gens, witness):
        res.fail("independence", "Jacobian determinant at the recorded point does not match")
    return res


# -- human-readable emitters ------------------------------------------------------


def to_text(solution: NoetherSolution, spec: str) -> str:
    rep = solution.report
    lines = [f"group {spec}, order {solution.action.order}"]
    for name, f in zip(generator_names(solution.rank), solution.generators):
        lines.append(f"{name} = {f}")
    total = sum(len(r) for r in rep.bracket_table)
    passed = sum(e.passed for r in rep.bracket_table for e in r)
    lines.append(f"bracket table: {passed}/{total} canonical")
    inv = sum(all(f) for f in rep.invariance_flags)
    lines.append(f"invariant generators: {inv}/{len(rep.invariance_flags)}")
    if rep.independence is not None:
        w = rep.independence
        point = ", ".join(str(p) for p in w.point)
        lines.append(f"independence: {w.status} at ({point}), det = {w.determinant}")
    lines.append(f"generation: {rep.generation}")
    for d in rep.discrepancies:
        lines.append(f"note: {d}")
    return "\n".join(lines) + "\n"


_LATEX_VAR = re.compile(r"([xy])(\d+)")
_LATEX_POW = re.compile(r"\^(-?\d+)")
_LATEX_ZETA = re.compile(r"zeta\((\d+)\)")
_LATEX_FRAC = re.compile(r"(?<![\w^{])(\d+)/(\d+)")


def poly_latex(text: str) -> str:
    out = _LATEX_ZETA.sub(r"\\zeta_{\1}", text)
    out = _LATEX_FRAC.sub(r"\\tfrac{\1}{\2}", out)
    out = _LATEX_VAR.sub(r"\1_{\2}", out)
    out = _LATEX_POW.sub(r"^{\1}", out)
    return out.replace("*", " ")


def ratfn_latex(f: RatFn) -> str:
    num = poly_latex(f.num.to_text())
    if f.den == 1:
        return num
    return f"\\frac{{{num}}}{{{poly_latex(f.den.to_text())}}}"


def to_latex(solution: NoetherSolution, spec: str) -> str:
    rep = solution.report
    n = solution.rank
    rows = []
    for i, f in enumerate(solution.xprime, 1):
        rows.append(f"x'_{{{i}}} &= {ratfn_latex(f)}")
    for i, f in enumerate(solution.yprime, 1):
        rows.append(f"y'_{{{i}}} = e_{{{i}}} &= {ratfn_latex(f)}")
    if "J" in rep.conventions:
        rows.append(f"J &= {poly_latex(rep.conventions['J'])}")
    body = " \\\\\n".join(rows)
    return (
        f"% {spec}, |G| = {solution.action.order}, rank {n}\n"
        "\\begin{align*}\n"
        f"{body}\n"
        "\\end{align*}\n"
    )
