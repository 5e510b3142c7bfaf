from dataclasses import dataclass
import sys
from threading import Lock
import time
from typing import List, TextIO

from errors import UsageError


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        if self.passed:
            return f"CHECK {self.check_id} PASS"
        return f"CHECK {self.check_id} FAIL {self.witness}"


class Report:
    """Check verdicts collected from the verification workers."""

    def __init__(self):
        self.results: dict[str, CheckResult] = {}
        self.lock = Lock()

    def record(self, check_id: str, passed: bool, witness: str = "") -> CheckResult:
        if not passed and not witness:
            raise UsageError(f"failed check {check_id} must carry a witness")
        result = CheckResult(check_id, passed, "" if passed else " ".join(witness.split()))
        with self.lock:
            if check_id in self.results:
                raise UsageError(f"check {check_id} recorded twice")
            self.results[check_id] = result
        return result

    def get(self) -> List[CheckResult]:
        with self.lock:
            return sorted(self.results.values(), key=lambda r: r.check_id)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.get() if not r.passed]

    def machine_lines(self) -> List[str]:
        return [r.line() for r in self.get()]

    def summary(self) -> str:
        results = self.get()
        failed = [r.check_id for r in results if not r.passed]
        text = f"{len(results) - len(failed)}/{len(results)} checks passed"
        if failed:
            text += "; failed: " + ", ".join(failed)
        return text

    @property
    def exit_code(self) -> int:
        return 1 if self.failures() else 0


class StatusLog:
    """Prints `binmeasure @ 1.23s: message` status lines, stderr by default."""

    def __init__(self, stream: TextIO | None = None, enabled: bool = True):
        self.stream = stream
        self.enabled = enabled
        self.start = time.monotonic()

    def __call__(self, message: str) -> None:
        if not self.enabled:
            return
        elapsed = time.monotonic() - self.start
        print(f"binmeasure @ {elapsed:.2f}s: {message}", file=self.stream or sys.stderr, flush=True)
