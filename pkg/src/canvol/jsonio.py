"""Deterministic JSON forms for every report type, with exact round-trips.

Rationals are serialized as "num/den" strings, baskets as four-field
objects, basket multisets as sorted [r, b'] pairs.  Key order is fixed by
construction, so serializing the same object twice is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .baskets import Basket, BasketSet, parse_rational, rat_str
from .classify import CaseReport, ExcludedCase, Solution
from .mainproof import BranchResult, MainReport, SubBound
from .slopes import DerivationStep, FiberData, MultiplicationRule, SlopeState
from .wci import ConsistencyReport
from .xi import PresetRun, XiStep, XiTrace


def _opt_rat(value: Fraction | None) -> str | None:
    return None if value is None else rat_str(value)


def _parse_opt_rat(value: str | None) -> Fraction | None:
    return None if value is None else parse_rational(value)


def to_jsonable(obj):
    """Lower a report object (or rational) to plain JSON-ready data."""
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, Basket):
        return {"r": obj.r, "b": obj.b, "b_reduced": obj.b_reduced, "a": obj.a}
    if isinstance(obj, BasketSet):
        return [list(pair) for pair in obj.pairs]
    if isinstance(obj, Solution):
        return {
            "baskets": to_jsonable(obj.baskets),
            "k3": rat_str(obj.k3),
            "pluri": {str(m): v for m, v in sorted(obj.pluri.items())},
            "note": obj.note,
        }
    if isinstance(obj, ExcludedCase):
        return {
            "pairs": [list(pair) for pair in obj.pairs],
            "reason": obj.reason,
            "at_m": obj.at_m,
            "k3": _opt_rat(obj.k3),
            "pluri": None if obj.pluri is None else
                {str(m): rat_str(v) for m, v in sorted(obj.pluri.items())},
        }
    if isinstance(obj, CaseReport):
        return {
            "sigma": obj.sigma,
            "tau_offset": rat_str(obj.tau_offset),
            "n_max": obj.n_max,
            "partitions_examined": [list(p) for p in obj.partitions_examined],
            "solutions": [to_jsonable(s) for s in obj.solutions],
            "excluded": [to_jsonable(e) for e in obj.excluded],
            "truncation_flag": obj.truncation_flag,
        }
    if isinstance(obj, XiStep):
        return {
            "m": obj.m,
            "alpha": rat_str(obj.alpha),
            "alpha0": obj.alpha0,
            "bound": rat_str(obj.new_bound),
            "condition": obj.condition_used,
        }
    if isinstance(obj, XiTrace):
        return {
            "start": rat_str(obj.start),
            "steps": [to_jsonable(s) for s in obj.steps],
            "final": rat_str(obj.final),
            "sup_certified": _opt_rat(obj.sup_certified),
        }
    if isinstance(obj, PresetRun):
        return {
            "preset": obj.preset,
            "xi": rat_str(obj.xi),
            "volume": rat_str(obj.volume),
            "trace": to_jsonable(obj.trace),
        }
    if isinstance(obj, ConsistencyReport):
        mismatch = obj.first_mismatch
        return {
            "passed": obj.passed,
            "first_mismatch": None if mismatch is None else {
                "m": mismatch[0],
                "from_baskets": rat_str(mismatch[1]),
                "from_series": rat_str(mismatch[2]),
            },
            "assumption": obj.assumption,
        }
    if isinstance(obj, FiberData):
        return {"kf2": obj.kf2, "chi_f": obj.chi_f, "pg_f": obj.pg_f}
    if isinstance(obj, MultiplicationRule):
        return {
            "pair": list(obj.pair),
            "min_total": obj.min_total,
            "coker_rank_bound": obj.coker_rank_bound,
        }
    if isinstance(obj, DerivationStep):
        return {
            "pair": list(obj.pair),
            "total": obj.total,
            "coker_rank_bound": obj.coker_rank_bound,
            "raw_sum": rat_str(obj.raw_sum),
            "result": rat_str(obj.result),
            "previous": _opt_rat(obj.previous),
            "updated": rat_str(obj.updated),
        }
    if isinstance(obj, SlopeState):
        return {
            "fiber": to_jsonable(obj.fiber),
            "bounds": {str(m): rat_str(v) for m, v in sorted(obj.bounds.items())},
            "rules": [to_jsonable(r) for r in obj.rules],
            "derivation": [to_jsonable(d) for d in obj.derivation],
        }
    if isinstance(obj, SubBound):
        return {
            "label": obj.label,
            "bound": rat_str(obj.bound),
            "provenance": obj.provenance,
            "citation": obj.citation,
            "command": obj.command,
            "witness": obj.witness,
        }
    if isinstance(obj, BranchResult):
        return {
            "id": obj.branch_id,
            "bound": rat_str(obj.bound),
            "strict": obj.strict,
            "provenance": obj.provenance,
            "witness": to_jsonable(obj.witness) if isinstance(obj.witness, Solution)
                else obj.witness,
            "citation": obj.citation,
            "command": obj.command,
            "details": [to_jsonable(d) for d in obj.details],
        }
    if isinstance(obj, MainReport):
        return {
            "branches": [to_jsonable(b) for b in obj.branches],
            "global_bound": rat_str(obj.global_bound),
            "witness": to_jsonable(obj.witness) if isinstance(obj.witness, Solution)
                else obj.witness,
        }
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def serialize(obj, indent: int | None = None) -> str:
    """JSON text for a report object; indent affects whitespace only."""
    payload = obj if isinstance(obj, dict) else to_jsonable(obj)
    if indent is None:
        return json.dumps(payload, separators=(",", ":"))
    return json.dumps(payload, indent=indent)


# Parsers, one per wire form, inverse to to_jsonable up to report equality.

def parse_basket(data) -> Basket:
    return Basket(data["r"], data["a"], data["b"], data["b_reduced"])


def parse_basket_set(data) -> BasketSet:
    return BasketSet.from_pairs([tuple(pair) for pair in data])


def parse_solution(data) -> Solution:
    return Solution(
        baskets=parse_basket_set(data["baskets"]),
        k3=parse_rational(data["k3"]),
        pluri={int(m): v for m, v in data["pluri"].items()},
        note=data["note"],
    )


def parse_excluded_case(data) -> ExcludedCase:
    pluri = data["pluri"]
    return ExcludedCase(
        pairs=tuple(tuple(pair) for pair in data["pairs"]),
        reason=data["reason"],
        at_m=data["at_m"],
        k3=_parse_opt_rat(data["k3"]),
        pluri=None if pluri is None else
            {int(m): parse_rational(v) for m, v in pluri.items()},
    )


def parse_case_report(data) -> CaseReport:
    return CaseReport(
        sigma=data["sigma"],
        tau_offset=parse_rational(data["tau_offset"]),
        n_max=data["n_max"],
        partitions_examined=tuple(tuple(p) for p in data["partitions_examined"]),
        solutions=tuple(parse_solution(s) for s in data["solutions"]),
        excluded=tuple(parse_excluded_case(e) for e in data["excluded"]),
        truncation_flag=data["truncation_flag"],
    )


def parse_xi_step(data) -> XiStep:
    return XiStep(
        m=data["m"],
        alpha=parse_rational(data["alpha"]),
        alpha0=data["alpha0"],
        new_bound=parse_rational(data["bound"]),
        condition_used=data["condition"],
    )


def parse_xi_trace(data) -> XiTrace:
    return XiTrace(
        start=parse_rational(data["start"]),
        steps=tuple(parse_xi_step(s) for s in data["steps"]),
        final=parse_rational(data["final"]),
        sup_certified=_parse_opt_rat(data["sup_certified"]),
    )


def parse_preset_run(data) -> PresetRun:
    return PresetRun(
        preset=data["preset"],
        trace=parse_xi_trace(data["trace"]),
        xi=parse_rational(data["xi"]),
        volume=parse_rational(data["volume"]),
    )


def parse_consistency_report(data) -> ConsistencyReport:
    mismatch = data["first_mismatch"]
    return ConsistencyReport(
        passed=data["passed"],
        first_mismatch=None if mismatch is None else (
            mismatch["m"],
            parse_rational(mismatch["from_baskets"]),
            parse_rational(mismatch["from_series"]),
        ),
        assumption=data["assumption"],
    )


def parse_slope_state(data) -> SlopeState:
    fiber = FiberData(**data["fiber"])
    return SlopeState(
        fiber=fiber,
        bounds={int(m): parse_rational(v) for m, v in data["bounds"].items()},
        rules=tuple(
            MultiplicationRule(tuple(r["pair"]), r["min_total"], r["coker_rank_bound"])
            for r in data["rules"]
        ),
        derivation=tuple(
            DerivationStep(
                pair=tuple(d["pair"]),
                total=d["total"],
                coker_rank_bound=d["coker_rank_bound"],
                raw_sum=parse_rational(d["raw_sum"]),
                result=parse_rational(d["result"]),
                previous=_parse_opt_rat(d["previous"]),
                updated=parse_rational(d["updated"]),
            )
            for d in data["derivation"]
        ),
    )


def parse_sub_bound(data) -> SubBound:
    return SubBound(
        label=data["label"],
        bound=parse_rational(data["bound"]),
        provenance=data["provenance"],
        citation=data["citation"],
        command=data["command"],
        witness=data["witness"],
    )


def _parse_witness(data):
    if isinstance(data, dict):
        return parse_solution(data)
    return data


def parse_branch_result(data) -> BranchResult:
    return BranchResult(
        branch_id=data["id"],
        bound=parse_rational(data["bound"]),
        strict=data["strict"],
        provenance=data["provenance"],
        witness=_parse_witness(data["witness"]),
        citation=data["citation"],
        command=data["command"],
        details=tuple(parse_sub_bound(d) for d in data["details"]),
    )


def parse_main_report(data) -> MainReport:
    return MainReport(
        branches=tuple(parse_branch_result(b) for b in data["branches"]),
        global_bound=parse_rational(data["global_bound"]),
        witness=_parse_witness(data["witness"]),
    )
