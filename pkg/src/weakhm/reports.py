"""Structured verification results and their JSON-safe encoding."""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

Number = Union[int, Fraction]

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"
INCONCLUSIVE = "inconclusive"

RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


def jsonable(value: Any) -> Any:
    """Exact numbers survive: ints stay ints, non-integral Fractions become "p/q"."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    raise TypeError(f"cannot encode {type(value).__name__}")


@dataclass
class VerifyReport:
    case_id: str
    params: dict
    lhs: Optional[Number]
    rhs: Optional[Number]
    relation: Optional[str]
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    @classmethod
    def judge(cls, case_id: str, params: dict, lhs: Number, rhs: Number, relation: str,
              detail: Optional[dict] = None, checks: Optional[list] = None) -> "VerifyReport":
        """Build a report whose status follows from ``lhs relation rhs``.

        ``checks`` are ``(name, left, right)`` equalities that must also hold;
        a failed one turns the report into a failure.
        """
        detail = dict(detail or {})
        ok = RELATIONS[relation](lhs, rhs)
        if checks:
            results = [{"name": name, "lhs": a, "rhs": b, "ok": a == b} for name, a, b in checks]
            detail["cross_checks"] = results
            ok = ok and all(r["ok"] for r in results)
        return cls(case_id, params, lhs, rhs, relation, PASS if ok else FAIL, detail)

    @classmethod
    def skipped(cls, case_id: str, params: dict, reason: str, status: str = HYPOTHESIS_NOT_MET) -> "VerifyReport":
        return cls(case_id, params, None, None, None, status, {"reason": reason})

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "params": jsonable(self.params),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "relation": self.relation,
            "pass": self.passed,
            "status": self.status,
            "detail": jsonable(self.detail),
        }
