# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 fermi-bound developers
#
# This file is part of fermi-bound.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""This module defines the bound records and reports produced by checks and certificates."""
import json
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from fermibound.configs import PASS_TOL


def _to_builtin(value):
    """Convert numpy scalars and containers into JSON-serializable builtins."""
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        values = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_to_builtin(v) for v in values]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


@dataclass
class BoundRecord:
    """A single evaluated bound, optionally paired with a measured quantity.

    ``tag`` names the inequality (e.g. ``"thm1"``, ``"cor12"``). ``value`` is the bound with its
    stated constants, ``strict_value`` the derivation-consistent variant when it differs, and
    ``alternatives`` any further constant choices reported side by side.
    """

    tag: str
    value: float
    params: dict = field(default_factory=dict)
    measured: float | None = None
    strict_value: float | None = None
    alternatives: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.value = float(self.value)
        if not self.value >= 0:
            raise ValueError(f"Bound '{self.tag}' must be nonnegative. Got {self.value}.")
        if self.measured is not None:
            self.measured = float(self.measured)
        if self.strict_value is not None:
            self.strict_value = float(self.strict_value)

    @property
    def passed(self):
        """``measured <= value + 1e-9``, or ``None`` without measurement."""
        if self.measured is None:
            return None
        return bool(self.measured <= self.value + PASS_TOL)

    @property
    def ratio(self):
        if self.measured is None or self.value == 0:
            return None
        return self.measured / self.value

    def to_dict(self, strict_proof=False):
        """Return the record as a JSON-serializable dictionary."""
        record = {"theorem": self.tag, "params": _to_builtin(self.params), "value": self.value}
        if self.measured is not None:
            record["measured"] = self.measured
            record["pass"] = self.passed
        if strict_proof:
            if self.strict_value is not None:
                record["strict_value"] = self.strict_value
            if self.alternatives:
                record["alternatives"] = _to_builtin(self.alternatives)
        if self.notes:
            record["notes"] = list(self.notes)
        return record


@dataclass
class BoundReport:
    """Collection of bound records with summary fields and flags."""

    name: str
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    def add(self, record):
        self.records.append(record)
        return record

    def flag(self, note):
        if note not in self.flags:
            self.flags.append(note)

    @property
    def passed(self):
        """True if every measured record passes (vacuously true without measurements)."""
        return all(record.passed for record in self.records if record.passed is not None)

    @property
    def num_violations(self):
        return sum(record.passed is False for record in self.records)

    @property
    def max_ratio(self):
        ratios = [record.ratio for record in self.records if record.ratio is not None]
        return max(ratios) if ratios else None

    def to_dict(self, strict_proof=False):
        return {
            "report": self.name,
            "pass": self.passed,
            "summary": _to_builtin(self.summary),
            "flags": list(self.flags),
            "records": [record.to_dict(strict_proof=strict_proof) for record in self.records],
        }

    def to_json(self, strict_proof=False, indent=2):
        return json.dumps(self.to_dict(strict_proof=strict_proof), indent=indent, sort_keys=True)

    def to_dataframe(self, strict_proof=False):
        """Return one row per record, with parameters flattened into ``param_<name>`` columns."""
        rows = []
        for record in self.records:
            row = {"theorem": record.tag, "value": record.value, "measured": record.measured, "pass": record.passed}
            if strict_proof:
                row["strict_value"] = record.strict_value
                for name, value in record.alternatives.items():
                    row[f"alt_{name}"] = value
            for name, value in _to_builtin(record.params).items():
                row[f"param_{name}"] = json.dumps(value) if isinstance(value, (list, dict)) else value
            rows.append(row)
        return pd.DataFrame(rows)

    def to_csv(self, strict_proof=False):
        return self.to_dataframe(strict_proof=strict_proof).to_csv(index=False)
