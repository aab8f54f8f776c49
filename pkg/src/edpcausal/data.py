"""Observed-data representation: schema, validation, scaling, CSV ingestion.

Conventions used everywhere downstream:

* treatment is a single categorical code in ``{0, ..., q-1}`` (expanded to
  indicator columns only when a design matrix is built);
* the covariate matrix stores binary columns first, then continuous ones,
  in the exact order declared by the schema;
* missing covariate entries are NaN in ``l`` and True in ``missing_mask``;
  outcome and treatment must be fully observed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateColumnError, ParseError, SchemaError, ValidationError

BINARY = "binary"
CONTINUOUS = "continuous"


@dataclass(frozen=True)
class VariableSchema:
    """Declares the outcome kind, treatment arity and typed covariates."""

    outcome_kind: str
    treatment_levels: int
    covariates: tuple
    outcome_name: str = "y"
    treatment_name: str = "a"

    def __post_init__(self):
        if self.outcome_kind not in (BINARY, CONTINUOUS):
            raise SchemaError(f"unknown outcome kind {self.outcome_kind!r}")
        if int(self.treatment_levels) != self.treatment_levels or self.treatment_levels < 2:
            raise SchemaError("treatment_levels must be an integer >= 2")
        object.__setattr__(self, "covariates", tuple((str(n), str(k)) for n, k in self.covariates))
        names = [self.outcome_name, self.treatment_name] + [n for n, _ in self.covariates]
        if len(set(names)) != len(names):
            raise SchemaError("variable names must be unique")
        seen_continuous = False
        for name, kind in self.covariates:
            if kind not in (BINARY, CONTINUOUS):
                raise SchemaError(f"covariate {name!r} has unknown kind {kind!r}")
            if kind == BINARY and seen_continuous:
                raise SchemaError("binary covariates must precede continuous ones")
            seen_continuous = seen_continuous or kind == CONTINUOUS

    @property
    def q(self) -> int:
        return int(self.treatment_levels)

    @property
    def p(self) -> int:
        return len(self.covariates)

    @property
    def p_binary(self) -> int:
        return sum(1 for _, k in self.covariates if k == BINARY)

    @property
    def p_continuous(self) -> int:
        return self.p - self.p_binary

    @property
    def covariate_names(self) -> tuple:
        return tuple(n for n, _ in self.covariates)

    @property
    def design_dim(self) -> int:
        """Columns of the local-GLM design row (1, treatment indicators, covariates)."""
        return 1 + (self.q - 1) + self.p

    def covariate_index(self, name: str) -> int:
        try:
            return self.covariate_names.index(name)
        except ValueError:
            raise SchemaError(f"unknown covariate {name!r}") from None


@dataclass(frozen=True)
class Dataset:
    """Validated observations.  Arrays are read-only after construction."""

    y: np.ndarray
    a: np.ndarray
    l: np.ndarray
    missing_mask: np.ndarray

    @property
    def n(self) -> int:
        return self.y.shape[0]

    def has_missing(self) -> bool:
        return bool(self.missing_mask.any())


def make_dataset(y, a, l, missing_mask, schema: VariableSchema) -> Dataset:
    """Validate arrays against the schema and freeze them into a Dataset."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    a = np.ascontiguousarray(a, dtype=np.int64)
    l = np.ascontiguousarray(l, dtype=np.float64)
    if missing_mask is None:
        missing_mask = np.isnan(l)
    missing_mask = np.ascontiguousarray(missing_mask, dtype=bool)
    n = y.shape[0]
    if a.shape != (n,) or l.shape != (n, schema.p) or missing_mask.shape != l.shape:
        raise ValidationError("inconsistent array shapes")
    if not np.all(np.isfinite(y)):
        raise ValidationError("outcome contains missing or non-finite values")
    if schema.outcome_kind == BINARY and not np.isin(y, (0.0, 1.0)).all():
        raise ValidationError("binary outcome must contain only 0/1")
    if a.min(initial=0) < 0 or a.max(initial=0) >= schema.q:
        raise ValidationError(f"treatment codes must lie in 0..{schema.q - 1}")
    if np.isnan(l[~missing_mask]).any():
        raise ValidationError("missing_mask is false at an absent value")
    for r, (name, kind) in enumerate(schema.covariates):
        col = l[:, r]
        obs = col[~missing_mask[:, r]]
        if not np.all(np.isfinite(obs)):
            raise ValidationError(f"covariate {name!r} has non-finite observed values")
        if kind == BINARY and not np.isin(obs, (0.0, 1.0)).all():
            raise ValidationError(f"binary covariate {name!r} contains values outside {{0,1}}")
    l = l.copy()
    l[missing_mask] = np.nan
    for arr in (y, a, l, missing_mask):
        arr.setflags(write=False)
    return Dataset(y=y, a=a, l=l, missing_mask=missing_mask)


def _parse_cell(text: str, row: int, name: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(row, f"cannot parse value {text!r} in column {name!r}") from None


def load_dataset(path, schema: VariableSchema) -> Dataset:
    """Read a CSV with a header row; empty cells are missing covariates."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(0, "empty file") from None
        required = [schema.outcome_name, schema.treatment_name, *schema.covariate_names]
        if set(header) != set(required):
            missing = sorted(set(required) - set(header))
            extra = sorted(set(header) - set(required))
            raise SchemaError(f"header does not match schema (missing={missing}, unexpected={extra})")
        col_of = {name: header.index(name) for name in required}
        rows = list(reader)

    n = len(rows)
    y = np.empty(n)
    a = np.empty(n, dtype=np.int64)
    l = np.full((n, schema.p), np.nan)
    mask = np.zeros((n, schema.p), dtype=bool)
    for i, row in enumerate(rows, start=1):
        if len(row) != len(header):
            raise ParseError(i, f"expected {len(header)} fields, got {len(row)}")
        y_cell = row[col_of[schema.outcome_name]].strip()
        a_cell = row[col_of[schema.treatment_name]].strip()
        if not y_cell:
            raise ValidationError(f"row {i}: outcome is missing; outcomes cannot be imputed")
        if not a_cell:
            raise ValidationError(f"row {i}: treatment is missing; treatments cannot be imputed")
        y[i - 1] = _parse_cell(y_cell, i, schema.outcome_name)
        a_val = _parse_cell(a_cell, i, schema.treatment_name)
        if a_val != int(a_val):
            raise ParseError(i, f"treatment code {a_cell!r} is not an integer")
        a[i - 1] = int(a_val)
        for r, name in enumerate(schema.covariate_names):
            cell = row[col_of[name]].strip()
            if cell == "":
                mask[i - 1, r] = True
            else:
                l[i - 1, r] = _parse_cell(cell, i, name)
    return make_dataset(y, a, l, mask, schema)


def save_dataset(d: Dataset, schema: VariableSchema, path) -> None:
    """Write a Dataset to CSV so that load_dataset round-trips it exactly."""
    header = [schema.outcome_name, schema.treatment_name, *schema.covariate_names]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(d.n):
            row = [repr(float(d.y[i])), str(int(d.a[i]))]
            for r in range(schema.p):
                row.append("" if d.missing_mask[i, r] else repr(float(d.l[i, r])))
            writer.writerow(row)


@dataclass(frozen=True)
class ScalingParams:
    """Per continuous covariate: observed-entry mean and sd (ddof=1)."""

    mean: np.ndarray
    sd: np.ndarray

    def scale_covariate(self, schema: VariableSchema, name: str, value: float) -> float:
        """Map one covariate value from the original to the standardized scale."""
        r = schema.covariate_index(name)
        if schema.covariates[r][1] == BINARY:
            return float(value)
        j = r - schema.p_binary
        return (float(value) - self.mean[j]) / self.sd[j]


def standardize_continuous(d: Dataset, schema: VariableSchema):
    """Center/scale continuous covariates to observed mean 0, sd 1.

    Statistics use observed entries only; binary columns and the missing mask
    are untouched.  Returns the transformed dataset and the scaling applied.
    """
    p1, p2 = schema.p_binary, schema.p_continuous
    mean = np.zeros(p2)
    sd = np.ones(p2)
    l = d.l.copy()
    for j in range(p2):
        r = p1 + j
        obs = d.l[~d.missing_mask[:, r], r]
        if obs.size < 2:
            raise DegenerateColumnError(
                f"continuous covariate {schema.covariate_names[r]!r} has fewer than 2 observed values"
            )
        mean[j] = obs.mean()
        sd[j] = obs.std(ddof=1)
        if sd[j] == 0.0:
            raise DegenerateColumnError(
                f"continuous covariate {schema.covariate_names[r]!r} has zero variance"
            )
        l[:, r] = (d.l[:, r] - mean[j]) / sd[j]
    out = make_dataset(d.y, d.a, l, d.missing_mask, schema)
    return out, ScalingParams(mean=mean, sd=sd)


def unstandardize_continuous(d: Dataset, schema: VariableSchema, params: ScalingParams) -> Dataset:
    """Invert standardize_continuous on the covariate matrix."""
    p1 = schema.p_binary
    l = d.l.copy()
    for j in range(schema.p_continuous):
        l[:, p1 + j] = d.l[:, p1 + j] * params.sd[j] + params.mean[j]
    return make_dataset(d.y, d.a, l, d.missing_mask, schema)


def design_matrix(a: np.ndarray, l: np.ndarray, q: int) -> np.ndarray:
    """Build local-GLM design rows (1, treatment indicators, covariates).

    Missing covariate entries propagate as NaN; the sampler overwrites them
    with imputed values before any likelihood evaluation.
    """
    n = a.shape[0]
    x = np.empty((n, 1 + (q - 1) + l.shape[1]))
    x[:, 0] = 1.0
    for t in range(1, q):
        x[:, t] = a == t
    x[:, q:] = l
    return x
