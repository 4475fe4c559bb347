from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from algebra.codec import ElementPayload, element_to_payload
from algebra.pbw_core import UEAElement


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class CheckResult(BaseModel):
    id: str
    status: CheckStatus
    witness: Optional[ElementPayload] = None

    @classmethod
    def from_value(cls, check_id: str, value: UEAElement) -> "CheckResult":
        """Pass iff the value is exactly zero; a nonzero value is kept as the witness."""
        if value.is_zero:
            return cls(id=check_id, status=CheckStatus.PASS)
        return cls(id=check_id, status=CheckStatus.FAIL, witness=element_to_payload(value))

    @classmethod
    def from_flag(cls, check_id: str, ok: bool) -> "CheckResult":
        return cls(id=check_id, status=CheckStatus.PASS if ok else CheckStatus.FAIL)


class VerificationReport(BaseModel):
    config: Dict[str, Any] = Field(default_factory=dict)
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def suite(self) -> str:
        return str(self.config.get("suite", ""))

    @property
    def passed(self) -> bool:
        return all(check.status == CheckStatus.PASS for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if check.status == CheckStatus.FAIL]

    def summary(self) -> str:
        return f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"

    @classmethod
    def assemble(cls, config: Dict[str, Any], checks: List[CheckResult]) -> "VerificationReport":
        return cls(config=config, checks=sorted(checks, key=lambda check: check.id))
