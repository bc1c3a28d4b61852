from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CoverReport:
    """Outcome of checking whether a family of parts is a proper union.

    ``missing_after_removal[i]`` is an element lying in part ``i`` and in
    no other part, i.e. a witness that dropping part ``i`` loses coverage.
    Parts that are redundant have no entry.
    """

    covered: bool
    proper: bool
    missing_after_removal: dict[int, tuple[int, ...]] = field(default_factory=dict)
    uncovered_witness: tuple[int, ...] | None = None
    certificate: Any = None

    def __post_init__(self) -> None:
        if self.proper and not self.covered:
            raise ValueError("a proper union must cover")
        if not self.covered and self.uncovered_witness is None:
            raise ValueError("an incomplete cover needs an uncovered witness")

    def to_json(self) -> dict[str, Any]:
        return {
            "covered": self.covered,
            "proper": self.proper,
            "witnesses": {str(i): list(v) for i, v in sorted(self.missing_after_removal.items())},
            "uncovered_witness": None if self.uncovered_witness is None else list(self.uncovered_witness),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }
