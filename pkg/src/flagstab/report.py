from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a verification: ordered facts plus a list of failures.

    A report is clean when ``failures`` is empty.  ``extras`` carries
    Python objects (witnesses, computed subalgebras) that are not rendered.
    """

    name: str
    facts: dict[str, str] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not self.failures

    def fact(self, key: str, value: object) -> None:
        self.facts[key] = _render(value)

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def merge(self, other: Report, prefix: str = "") -> None:
        for key, value in other.facts.items():
            self.facts[prefix + key] = value
        self.failures.extend(prefix + f for f in other.failures)

    def lines(self) -> list[str]:
        """Stable ``key=value`` rendering used by the structured CLI output."""
        out = [f"report={self.name}", f"status={'clean' if self.clean else 'failed'}"]
        out += [f"{k}={v}" for k, v in self.facts.items()]
        out += [f"failure.{i}={msg}" for i, msg in enumerate(self.failures)]
        return out

    def human(self) -> str:
        head = f"{self.name}: {'clean' if self.clean else 'FAILED'}"
        body = [f"  {k}: {v}" for k, v in self.facts.items()]
        body += [f"  ! {msg}" for msg in self.failures]
        return "\n".join([head, *body])


def _render(value: object) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(_render(v) for v in value)
    return str(value)
