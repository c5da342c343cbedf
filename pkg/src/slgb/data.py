"""Tabular datasets: schema, parsing, normalization and semi-supervised splits."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np

NUMERIC = "numeric"
NOMINAL = "nominal"

MISSING_TOKENS = {"", "?", "na", "n/a", "nan", "null"}


class DataError(Exception):
    """Base class for dataset ingestion problems."""


class SchemaError(DataError):
    """Malformed header / attribute declarations."""


class RowError(DataError):
    """A data row that does not fit the schema."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyDatasetError(DataError):
    """Stream contained a schema but no data rows."""


@dataclass(frozen=True)
class Attribute:
    """One column of the schema.

    Nominal attributes carry their ordered value set in ``values``; numeric
    attributes carry observed ``lo``/``hi`` (and the imputation ``mean``) once
    normalization statistics have been computed.
    """

    name: str
    kind: str
    values: tuple = ()
    lo: float | None = None
    hi: float | None = None
    mean: float | None = None

    def __post_init__(self):
        if self.kind not in (NUMERIC, NOMINAL):
            raise SchemaError(f"unknown attribute kind {self.kind!r}")
        if self.kind == NOMINAL:
            if not self.values:
                raise SchemaError(f"nominal attribute {self.name!r} has empty domain")
            if len(set(self.values)) != len(self.values):
                raise SchemaError(f"nominal attribute {self.name!r} has duplicate values")
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise SchemaError(f"attribute {self.name!r}: lo > hi")


@dataclass
class Dataset:
    """Schema-typed instances with optional labels.

    ``X`` is a float matrix: numeric columns hold raw (or normalized) values
    with NaN for missing, nominal columns hold integer codes into the
    attribute's value set.  ``y`` holds class codes into ``classes``, with -1
    for unlabeled instances.  Instances are immutable by convention; all
    operations return fresh datasets.
    """

    attributes: list[Attribute]
    classes: tuple
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.y = np.asarray(self.y, dtype=int)
        if self.X.ndim != 2 or self.X.shape[1] != len(self.attributes):
            raise SchemaError("X shape does not match schema")
        if len(self.y) != len(self.X):
            raise SchemaError("y length does not match X")
        if len(self.classes) < 2:
            raise SchemaError("at least 2 classes must be declared")
        if self.y.size and (self.y.max() >= len(self.classes) or self.y.min() < -1):
            raise SchemaError("label code outside declared class set")

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.X)

    @property
    def p(self) -> int:
        return len(self.attributes)

    @property
    def labeled_mask(self) -> np.ndarray:
        return self.y >= 0

    def subset(self, idx) -> "Dataset":
        idx = np.asarray(idx)
        if idx.dtype.kind not in "bi":
            idx = idx.astype(int)  # e.g. an empty list
        return Dataset(self.attributes, self.classes, self.X[idx].copy(), self.y[idx].copy())

    def without_labels(self) -> "Dataset":
        return Dataset(self.attributes, self.classes, self.X.copy(), np.full(self.n, -1))

    def class_counts(self) -> np.ndarray:
        counts = np.zeros(len(self.classes), dtype=int)
        for c in self.y[self.y >= 0]:
            counts[c] += 1
        return counts

    def numeric_columns(self) -> list[int]:
        return [t for t, a in enumerate(self.attributes) if a.kind == NUMERIC]

    def nominal_columns(self) -> list[int]:
        return [t for t, a in enumerate(self.attributes) if a.kind == NOMINAL]

    def decode_value(self, col: int, value: float) -> str:
        a = self.attributes[col]
        if a.kind == NOMINAL:
            return str(a.values[int(value)])
        return "?" if np.isnan(value) else repr(float(value))


@dataclass
class SemiSupervisedSplit:
    """Disjoint labeled / unlabeled / test partition of one dataset.

    ``hidden_labels`` retains the ground truth of the unlabeled part for
    transductive scoring only; learners never see it.
    """

    labeled: Dataset
    unlabeled: Dataset
    test: Dataset
    ratio: float
    hidden_labels: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))
    warnings: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _is_missing(cell: str) -> bool:
    return cell.strip().lower() in MISSING_TOKENS


def _read_text(source) -> str:
    if isinstance(source, (str, bytes)):
        data = source
    else:
        data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def load_dataset(source, format: str = "csv", class_column=None) -> Dataset:
    """Parse a CSV or KEEL/ARFF stream into a Dataset.

    ``class_column`` overrides the default last-column class; it may be a
    column name or index.
    """
    text = _read_text(source)
    if format == "csv":
        return _load_csv(text, class_column)
    if format == "keel_arff":
        return _load_arff(text, class_column)
    raise SchemaError(f"unknown format {format!r}")


def _resolve_class_column(names, class_column):
    if class_column is None:
        return len(names) - 1
    if isinstance(class_column, int):
        if not 0 <= class_column < len(names):
            raise SchemaError(f"class column index {class_column} out of range")
        return class_column
    if class_column in names:
        return names.index(class_column)
    raise SchemaError(f"class column {class_column!r} not in header")


def _load_csv(text: str, class_column) -> Dataset:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise SchemaError("empty stream, no header")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header) or any(not h for h in header):
        raise SchemaError("header must contain unique, non-empty column names")
    ncol = len(header)
    data_rows = rows[1:]
    if not data_rows:
        raise EmptyDatasetError("no data rows")
    for i, row in enumerate(data_rows):
        if len(row) != ncol:
            raise RowError(i + 2, f"expected {ncol} cells, got {len(row)}")
    class_idx = _resolve_class_column(header, class_column)

    cells = [[c.strip() for c in row] for row in data_rows]
    attributes = []
    columns = []
    for j in range(ncol):
        if j == class_idx:
            attributes.append(None)
            columns.append(None)
            continue
        col = [row[j] for row in cells]
        attributes_j, codes = _type_column(header[j], col)
        attributes.append(attributes_j)
        columns.append(codes)

    labels = [row[class_idx] for row in cells]
    classes, y = _encode_labels(labels)

    keep = [j for j in range(ncol) if j != class_idx]
    X = np.column_stack([columns[j] for j in keep]) if keep else np.empty((len(cells), 0))
    attrs = [attributes[j] for j in keep]
    return Dataset(attrs, classes, X, y)


def _type_column(name: str, col: list) -> tuple:
    """Infer one column's kind and return (Attribute, float codes)."""
    present = [c for c in col if not _is_missing(c)]
    parsed = []
    n_ok = 0
    for c in present:
        try:
            parsed.append(float(c))
            n_ok += 1
        except ValueError:
            parsed.append(None)
    numeric = bool(present) and n_ok >= 0.8 * len(present)
    if numeric:
        out = np.full(len(col), np.nan)
        for i, c in enumerate(col):
            if _is_missing(c):
                continue
            try:
                out[i] = float(c)
            except ValueError:
                pass  # unparseable numeric cell -> missing
        return Attribute(name, NUMERIC), out
    # nominal: missing becomes its own category so downstream stays total
    values = []
    for c in col:
        v = "?" if _is_missing(c) else c
        if v not in values:
            values.append(v)
    index = {v: k for k, v in enumerate(values)}
    out = np.array([index["?" if _is_missing(c) else c] for c in col], dtype=float)
    return Attribute(name, NOMINAL, tuple(values)), out


def _encode_labels(labels: list) -> tuple:
    classes = []
    y = np.empty(len(labels), dtype=int)
    for i, lab in enumerate(labels):
        if _is_missing(lab):
            y[i] = -1
            continue
        if lab not in classes:
            classes.append(lab)
        y[i] = classes.index(lab)
    if len(classes) < 2:
        raise SchemaError(f"need at least 2 classes, found {classes!r}")
    return tuple(classes), y


def _load_arff(text: str, class_column) -> Dataset:
    names, kinds, domains = [], [], []
    data_lines = []
    in_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        low = line.lower()
        if in_data:
            data_lines.append((lineno, line))
        elif low.startswith("@attribute"):
            rest = line[len("@attribute"):].strip()
            if rest.startswith("'"):
                end = rest.index("'", 1)
                name, spec = rest[1:end], rest[end + 1:].strip()
            else:
                parts = rest.split(None, 1)
                if len(parts) != 2:
                    raise SchemaError(f"line {lineno}: malformed @attribute")
                name, spec = parts
            spec = spec.strip()
            if spec.startswith("{"):
                if not spec.endswith("}"):
                    raise SchemaError(f"line {lineno}: unterminated nominal domain")
                vals = [v.strip().strip("'") for v in spec[1:-1].split(",")]
                names.append(name)
                kinds.append(NOMINAL)
                domains.append(vals)
            elif spec.lower().split("[")[0].strip() in ("numeric", "real", "integer"):
                names.append(name)
                kinds.append(NUMERIC)
                domains.append(None)
            else:
                raise SchemaError(f"line {lineno}: unsupported attribute type {spec!r}")
        elif low.startswith("@data"):
            if not names:
                raise SchemaError("@data before any @attribute")
            in_data = True
        elif low.startswith("@relation") or low.startswith("@inputs") or low.startswith("@outputs"):
            continue
    if not in_data:
        raise SchemaError("missing @data section")
    if not data_lines:
        raise EmptyDatasetError("no data rows after @data")

    class_idx = _resolve_class_column(names, class_column)
    n = len(data_lines)
    ncol = len(names)
    cols = [np.full(n, np.nan) for _ in range(ncol)]
    labels = []
    nominal_index = [
        {v: k for k, v in enumerate(domains[j])} if kinds[j] == NOMINAL else None
        for j in range(ncol)
    ]
    extra_missing = [False] * ncol
    for i, (lineno, line) in enumerate(data_lines):
        parts = [next(csv.reader([line]))][0]
        parts = [p.strip() for p in parts]
        if len(parts) != ncol:
            raise RowError(lineno, f"expected {ncol} cells, got {len(parts)}")
        for j, cell in enumerate(parts):
            if j == class_idx:
                labels.append(cell)
                continue
            if kinds[j] == NUMERIC:
                if _is_missing(cell):
                    continue
                try:
                    cols[j][i] = float(cell)
                except ValueError:
                    pass
            else:
                if _is_missing(cell):
                    extra_missing[j] = True
                    cols[j][i] = -1  # patched below once domain is final
                elif cell in nominal_index[j]:
                    cols[j][i] = nominal_index[j][cell]
                else:
                    raise RowError(lineno, f"value {cell!r} outside domain of {names[j]!r}")

    attributes = []
    keep = [j for j in range(ncol) if j != class_idx]
    for j in keep:
        if kinds[j] == NUMERIC:
            attributes.append(Attribute(names[j], NUMERIC))
        else:
            dom = list(domains[j])
            if extra_missing[j]:
                dom.append("?")
                cols[j][cols[j] < 0] = len(dom) - 1
            attributes.append(Attribute(names[j], NOMINAL, tuple(dom)))

    if kinds[class_idx] == NOMINAL:
        classes = tuple(domains[class_idx])
        if len(classes) < 2:
            raise SchemaError("class attribute must declare at least 2 values")
        idx = {v: k for k, v in enumerate(classes)}
        y = np.array([-1 if _is_missing(l) else idx.get(l, -2) for l in labels])
        if (y == -2).any():
            bad = labels[int(np.where(y == -2)[0][0])]
            raise SchemaError(f"label {bad!r} outside declared class set")
    else:
        classes, y = _encode_labels(labels)

    X = np.column_stack([cols[j] for j in keep]) if keep else np.empty((n, 0))
    return Dataset(attributes, classes, X, y)


def save_csv(d: Dataset, path) -> None:
    """Write a dataset back out as CSV; missing cells and labels become '?'."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([a.name for a in d.attributes] + ["class"])
        for i in range(d.n):
            row = []
            for j, a in enumerate(d.attributes):
                v = d.X[i, j]
                if a.kind == NUMERIC:
                    row.append("?" if np.isnan(v) else repr(float(v)))
                else:
                    row.append(str(a.values[int(v)]))
            row.append("?" if d.y[i] < 0 else str(d.classes[d.y[i]]))
            w.writerow(row)


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


def normalize_numeric(d: Dataset, reference: Dataset | None = None) -> Dataset:
    """Min-max scale numeric attributes to [0, 1].

    Statistics (lo/hi/mean) come from ``reference`` when given (the training
    split), otherwise from ``d`` itself, and are stored in the schema.
    Missing numeric cells are imputed with the mean; constant columns map
    to 0 everywhere.
    """
    src = reference if reference is not None else d
    X = d.X.copy()
    attrs = []
    for j, a in enumerate(d.attributes):
        if a.kind != NUMERIC:
            attrs.append(a)
            continue
        if reference is not None and src.attributes[j].lo is not None:
            ra = src.attributes[j]
            lo, hi, mean = ra.lo, ra.hi, ra.mean
        else:
            col = src.X[:, j]
            ok = col[~np.isnan(col)]
            if ok.size == 0:
                lo, hi, mean = 0.0, 0.0, 0.0
            else:
                lo, hi, mean = float(ok.min()), float(ok.max()), float(ok.mean())
        col = X[:, j]
        col[np.isnan(col)] = mean
        if hi > lo:
            col = np.clip((col - lo) / (hi - lo), 0.0, 1.0)
        else:
            col = np.zeros_like(col)
        X[:, j] = col
        attrs.append(replace(a, lo=lo, hi=hi, mean=mean))
    return Dataset(attrs, d.classes, X, d.y.copy())


# ---------------------------------------------------------------------------
# Splits
# ---------------------------------------------------------------------------


def _stratified_counts(counts: np.ndarray, total: int, enforce_min: bool) -> np.ndarray:
    """Largest-remainder apportionment of ``total`` over class counts."""
    counts = np.asarray(counts, dtype=float)
    n = counts.sum()
    quota = counts * total / n
    take = np.floor(quota).astype(int)
    rem = total - take.sum()
    order = np.argsort(-(quota - take))
    for k in range(rem):
        take[order[k % len(take)]] += 1
    if enforce_min:
        for c in np.where((take == 0) & (counts > 0))[0]:
            take[c] = 1
    take = np.minimum(take, counts.astype(int))
    return take


def _fold_assignment(y: np.ndarray, n_folds: int, rng: np.random.Generator) -> np.ndarray:
    """Stratified fold ids: per class, shuffle then deal round-robin."""
    folds = np.empty(len(y), dtype=int)
    for c in np.unique(y):
        idx = np.where(y == c)[0]
        rng.shuffle(idx)
        start = int(rng.integers(n_folds))
        for k, i in enumerate(idx):
            folds[i] = (start + k) % n_folds
    return folds


def make_split(d: Dataset, ratio: float, fold: int = 0, n_folds: int = 10,
               seed: int = 0) -> SemiSupervisedSplit:
    """Cross-validation style semi-supervised split.

    One fold (1/``n_folds`` of the data) is the test set; within the training
    remainder, a stratified random subset of size ``ratio`` keeps its labels
    and the rest becomes the unlabeled part.
    """
    if not 0 < ratio < 1:
        raise ValueError("ratio must be in (0, 1)")
    if not 0 <= fold < n_folds:
        raise ValueError("fold out of range")
    if not d.labeled_mask.all():
        raise ValueError("make_split needs a fully labeled dataset")
    rng = np.random.default_rng(seed)
    fold_of = _fold_assignment(d.y, n_folds, rng)
    test_idx = np.where(fold_of == fold)[0]
    train_idx = np.where(fold_of != fold)[0]

    warnings = []
    y_train = d.y[train_idx]
    counts = np.bincount(y_train, minlength=len(d.classes))
    target = int(round(ratio * len(train_idx)))
    take = _stratified_counts(counts, target, enforce_min=True)
    if ((counts > 0) & (np.floor(counts * target / len(train_idx)) == 0)).any():
        warnings.append("ratio yields zero labeled instances for some class; "
                        "minimum one per class enforced")
    labeled_rows = []
    for c in range(len(d.classes)):
        rows = train_idx[y_train == c]
        rng.shuffle(rows)
        labeled_rows.extend(rows[: take[c]])
    labeled_rows = np.sort(np.array(labeled_rows, dtype=int))
    unlabeled_rows = np.setdiff1d(train_idx, labeled_rows)

    unlabeled = d.subset(unlabeled_rows)
    hidden = unlabeled.y.copy()
    return SemiSupervisedSplit(
        labeled=d.subset(labeled_rows),
        unlabeled=unlabeled.without_labels(),
        test=d.subset(test_idx),
        ratio=ratio,
        hidden_labels=hidden,
        warnings=warnings,
    )


def make_grid_split(d: Dataset, labeled_frac: float, unlabeled_frac: float,
                    seed: int = 0) -> SemiSupervisedSplit:
    """Grid-study split: 20% test, two disjoint 40% pools.

    The labeled part takes ``labeled_frac`` of the first pool (labels kept);
    the unlabeled part takes ``unlabeled_frac`` of the second pool (labels
    removed).
    """
    if not 0 < labeled_frac <= 1:
        raise ValueError("labeled_frac must be in (0, 1]")
    if not 0 <= unlabeled_frac <= 1:
        raise ValueError("unlabeled_frac must be in [0, 1]")
    if not d.labeled_mask.all():
        raise ValueError("make_grid_split needs a fully labeled dataset")
    rng = np.random.default_rng(seed)
    fold_of = _fold_assignment(d.y, 5, rng)
    test_idx = np.where(fold_of == 0)[0]
    pool1 = np.where((fold_of == 1) | (fold_of == 2))[0]
    pool2 = np.where((fold_of == 3) | (fold_of == 4))[0]

    def pick(pool, frac, enforce_min):
        y_pool = d.y[pool]
        counts = np.bincount(y_pool, minlength=len(d.classes))
        target = int(round(frac * len(pool)))
        take = _stratified_counts(counts, target, enforce_min=enforce_min)
        rows = []
        for c in range(len(d.classes)):
            cand = pool[y_pool == c]
            rng.shuffle(cand)
            rows.extend(cand[: take[c]])
        return np.sort(np.array(rows, dtype=int))

    labeled_rows = pick(pool1, labeled_frac, enforce_min=True)
    if unlabeled_frac > 0:
        unlabeled_rows = pick(pool2, unlabeled_frac, enforce_min=False)
    else:
        unlabeled_rows = np.empty(0, dtype=int)

    unlabeled = d.subset(unlabeled_rows)
    hidden = unlabeled.y.copy()
    return SemiSupervisedSplit(
        labeled=d.subset(labeled_rows),
        unlabeled=unlabeled.without_labels(),
        test=d.subset(test_idx),
        ratio=labeled_frac,
        hidden_labels=hidden,
    )
