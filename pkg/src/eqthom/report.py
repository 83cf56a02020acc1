"""Check entries and suite reports shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = "1.0"


@dataclass(frozen=True)
class CheckEntry:
    label: str
    anchor: str
    status: str  # "pass" or "fail"
    mode: str  # "exact" or "numeric"
    residual: object = None
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    name: str
    entries: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def add(self, label, anchor, ok, mode="exact", residual=None, witness=None):
        self.entries.append(CheckEntry(label, anchor, "pass" if ok else "fail", mode,
                                       _jsonable(residual), _jsonable(witness)))
        return ok

    def extend(self, other: "Report", prefix=""):
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.label, e.anchor, e.status, e.mode,
                                           e.residual, e.witness))
        self.data.update({prefix + k: v for k, v in other.data.items()})

    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.name,
            "status": "pass" if self.passed else "fail",
            "parameters": _jsonable(self.parameters),
            "wall_time": self.wall_time,
            "data": _jsonable(self.data),
            "entries": [asdict(e) for e in sorted(self.entries, key=lambda e: e.label)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        rep = cls(d["suite"], parameters=d.get("parameters", {}), data=d.get("data", {}),
                  wall_time=d.get("wall_time", 0.0))
        rep.entries = [CheckEntry(**e) for e in d["entries"]]
        return rep

    def __repr__(self):
        bad = len(self.failures())
        return f"Report({self.name!r}, {len(self.entries)} entries, {bad} failing)"


def _jsonable(x):
    """Convert exact scalars, fractions and tuples into JSON-friendly values."""
    from fractions import Fraction

    from .scalars import Scalar

    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, Scalar):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return repr(x)
