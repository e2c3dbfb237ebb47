"""Map free-text user locations to region codes.

Twitter profile locations are unstructured ("bay area", "Sacramento CA",
"NYC"), so matching is deliberately simple: a region's full name as a
case-insensitive substring, or its code as an exact uppercase token.
First match in table order wins, which makes the table order part of
the contract.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources

from .errors import InputDataError

_LETTER_RUN_RE = re.compile(r"[A-Za-z]+")
_CODE_RE = re.compile(r"[A-Z]+\Z")


@dataclass(frozen=True)
class RegionTable:
    """Ordered (code, full_name) pairs; codes unique and uppercase."""

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        seen = set()
        lowered = []
        for code, name in self.entries:
            if not _CODE_RE.match(code):
                raise ValueError(f"region code must be uppercase letters: {code!r}")
            if not name or not name.strip():
                raise ValueError(f"region {code} has an empty full name")
            if code in seen:
                raise ValueError(f"duplicate region code: {code}")
            seen.add(code)
            lowered.append(name.lower())
        object.__setattr__(self, "_lowered_names", tuple(lowered))

    def codes(self) -> tuple[str, ...]:
        return tuple(code for code, _ in self.entries)

    def __contains__(self, code: object) -> bool:
        return any(code == c for c, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def resolve(self, location: str, loose_abbrev: bool = False) -> str | None:
        """Region code for a location string, or None.

        Full names match as case-insensitive substrings. Codes match as
        whole uppercase letter runs ("CA" in "San Jose, CA" but not in
        "NYC"); with loose_abbrev they match as case-sensitive
        substrings instead, trading precision for recall.
        """
        if not location:
            return None
        lowered = location.lower()
        runs: set[str] | None = None
        for (code, _name), low_name in zip(self.entries, self._lowered_names):
            if low_name in lowered:
                return code
            if loose_abbrev:
                if code in location:
                    return code
            else:
                if runs is None:
                    runs = set(_LETTER_RUN_RE.findall(location))
                if code in runs:
                    return code
        return None


def load_region_table(path: str | None = None) -> RegionTable:
    """Load a code,full_name CSV; defaults to the bundled US states."""
    if path is None:
        text = (
            resources.files("ctvm.data")
            .joinpath("us_states.csv")
            .read_text(encoding="utf-8")
        )
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputDataError(f"cannot read region table: {exc}") from exc
    lines = [
        line
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    entries = []
    for row in csv.reader(lines):
        if len(row) != 2:
            raise InputDataError(f"region table row needs code,full_name: {row!r}")
        entries.append((row[0].strip(), row[1].strip()))
    if not entries:
        raise InputDataError("region table is empty")
    try:
        return RegionTable(tuple(entries))
    except ValueError as exc:
        raise InputDataError(str(exc)) from exc
