"""Audit table of named coefficients with their comparison status."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from ..symring import RatExpr, ZPoly

MATCH = "match"
MATCH_SCALED = "match-scaled"
MISMATCH = "mismatch"
UNSTATED = "unstated"
ASSUMPTION = "assumption"
DERIVED = "derived"
FAILED = "failed"

CSV_COLUMNS = ("name", "symbolic", "reference_value", "scale", "status", "note")


class LedgerMismatchError(Exception):
    def __init__(self, entry: "LedgerEntry"):
        super().__init__(f"ledger mismatch at {entry.name}: {entry.note}")
        self.entry = entry


@dataclass
class LedgerEntry:
    name: str
    symbolic: str
    reference: str | None = None
    scale: str | None = None
    status: str = UNSTATED
    note: str = ""
    value: object = field(default=None, repr=False, compare=False)

    def row(self):
        return (self.name, self.symbolic, self.reference or "", self.scale or "", self.status, self.note)


@dataclass
class Ledger:
    case: str
    entries: list[LedgerEntry] = field(default_factory=list)
    conclusion: list[str] = field(default_factory=list)
    proven: bool = False
    artifacts: dict = field(default_factory=dict, repr=False)

    def __getitem__(self, name: str) -> LedgerEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name):
        return any(e.name == name for e in self.entries)

    def names(self):
        return [e.name for e in self.entries]

    def _add(self, entry: LedgerEntry) -> LedgerEntry:
        if entry.name in self:
            raise ValueError(f"duplicate ledger entry {entry.name}")
        self.entries.append(entry)
        return entry

    def record(self, name: str, value, note: str = "") -> LedgerEntry:
        """An engine value with no reference to compare against."""
        return self._add(LedgerEntry(name, str(value), status=UNSTATED, note=note, value=value))

    def compare(self, name: str, value, reference, *, allow_scale=False, note: str = "") -> LedgerEntry:
        """Exact comparison; with ``allow_scale`` a nonzero rational multiple also counts."""
        if not isinstance(value, ZPoly):
            value = RatExpr.coerce(value)
        if not isinstance(reference, ZPoly):
            reference = RatExpr.coerce(reference)
        entry = LedgerEntry(name, str(value), str(reference), "1", MISMATCH, note, value)
        if value == reference:
            entry.status = MATCH
        elif (allow_scale and isinstance(value, RatExpr) and isinstance(reference, RatExpr)
              and not reference.is_zero() and (ratio := value.ratio_to(reference)) not in (None, 0)):
            entry.status = MATCH_SCALED
            entry.scale = str(ratio)
        else:
            entry.scale = ""
            diff = value - reference
            entry.note = "; ".join(filter(None, [note, f"engine - reference = {diff}"]))
        return self._add(entry)

    def compare_poly(self, name: str, value: ZPoly, reference: ZPoly, note: str = "") -> list[LedgerEntry]:
        """One entry per z-power in the union of supports."""
        out = []
        for k in sorted(set(value.support()) | set(reference.support()), reverse=True):
            out.append(self.compare(f"{name}[z^{k}]", value.coeff(k), reference.coeff(k), note=note))
        return out

    def record_poly(self, name: str, value: ZPoly, skip=()) -> None:
        for k in sorted(value.support(), reverse=True):
            entry_name = f"{name}[z^{k}]"
            if entry_name not in skip:
                self.record(entry_name, value.coeff(k))

    def assume(self, name: str, statement: str) -> LedgerEntry:
        return self._add(LedgerEntry(name, statement, status=ASSUMPTION, note="logical step, not a computed identity"))

    def derive(self, name: str, ok: bool, statement: str, note: str = "") -> LedgerEntry:
        return self._add(LedgerEntry(name, statement, status=DERIVED if ok else FAILED, note=note))

    # summaries ---------------------------------------------------------------
    def mismatches(self) -> list[LedgerEntry]:
        return [e for e in self.entries if e.status in (MISMATCH, FAILED)]

    def first_mismatch(self) -> LedgerEntry | None:
        bad = self.mismatches()
        return bad[0] if bad else None

    def ok(self) -> bool:
        return not self.mismatches() and self.proven

    def raise_on_mismatch(self):
        bad = self.first_mismatch()
        if bad is not None:
            raise LedgerMismatchError(bad)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            out[e.status] = out.get(e.status, 0) + 1
        return dict(sorted(out.items()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for e in self.entries:
            w.writerow(e.row())
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "case": self.case,
            "entries": len(self.entries),
            "status_counts": self.counts(),
            "mismatches": [e.name for e in self.mismatches()],
            "conclusion": list(self.conclusion),
            "proven": self.proven,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"
