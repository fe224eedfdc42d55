"""
Result tables: CSV / JSON-lines emission and parsing, and the long-format summary
"""

import io
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, List, Optional, Sequence, Type, TypeVar, Union

import pandas as pd
from pydantic import BaseModel

from .models import ResultRow, SummaryRecord

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)

FORMATS = ("csv", "jsonl")
HEADLINE_SOLVER = "qa"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def emit(
    records: Sequence[BaseModel],
    fmt: str = "csv",
    model: Optional[Type[BaseModel]] = None,
) -> str:
    """
    Render records as CSV (header plus one line per record) or JSON lines

    ``model`` fixes the CSV header when ``records`` is empty; it defaults to the
    type of the first record, then to ``ResultRow``.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {list(FORMATS)}")
    model = model or (type(records[0]) if records else ResultRow)
    if fmt == "jsonl":
        return "".join(r.model_dump_json() + "\n" for r in records)

    fields = list(model.model_fields)
    cells = [[_cell(getattr(record, name)) for name in fields] for record in records]
    return pd.DataFrame(cells, columns=fields).to_csv(index=False, lineterminator="\n")


def parse(document: str, model: Type[M], fmt: str = "csv") -> List[M]:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {list(FORMATS)}")
    if fmt == "jsonl":
        return [model.model_validate_json(line) for line in document.splitlines() if line.strip()]
    if not document.strip():
        return []
    # every cell stays text so blanks reach the model validators as ""
    frame = pd.read_csv(io.StringIO(document), dtype=str, keep_default_na=False)
    return [model.model_validate(row) for row in frame.to_dict(orient="records")]


def parse_rows(document: str, fmt: str = "csv") -> List[ResultRow]:
    return parse(document, ResultRow, fmt)


def parse_summary(document: str, fmt: str = "csv") -> List[SummaryRecord]:
    return parse(document, SummaryRecord, fmt)


def format_for(path: Union[str, Path]) -> str:
    """``jsonl`` for .jsonl/.ndjson files, CSV otherwise"""
    return "jsonl" if Path(path).suffix.lower() in {".jsonl", ".ndjson"} else "csv"


def save(document: str, path: Union[str, Path]) -> Path:
    """Write a rendered table; raises OSError when the destination is unwritable"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document, encoding="utf-8")
    logger.info("💾 Saved %s", path)
    return path


def read_rows(path: Union[str, Path]) -> List[ResultRow]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Result file not found: {path}")
    return parse_rows(path.read_text(encoding="utf-8"), format_for(path))


def _number(value: Any) -> Optional[float]:
    value = float(value)
    return None if math.isnan(value) else value


def _rows_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    frame = pd.DataFrame(
        {
            "scale_id": [r.scale_id for r in rows],
            "weight_id": [r.weight_id for r in rows],
            "solver_id": [r.solver_id for r in rows],
            "utility": [r.utility for r in rows],
            "feasible": [r.feasible for r in rows],
            "wall_time": [r.wall_time for r in rows],
        }
    )
    frame["utility"] = pd.to_numeric(frame["utility"], errors="coerce")
    frame["feasible"] = frame["feasible"].astype(float)
    return frame


def summarize(rows: Sequence[ResultRow]) -> List[SummaryRecord]:
    """
    Long-format summary keyed by (scale, weight, solver)

    Per group: mean utility over feasible rows, feasible rate, mean wall time
    and row count. Per weight group, QA against every other solver present:
    relative utility gain (mean_QA - mean_H) / mean_H and the wall-time
    ratio mean_QA / mean_H.
    """
    if not rows:
        raise ValueError("no result rows to summarize")
    frame = _rows_frame(rows)
    records: List[SummaryRecord] = []

    grouped = frame.groupby(["scale_id", "weight_id", "solver_id"], sort=True)
    for (scale_id, weight_id, solver_id), group in grouped:
        metrics = {
            "mean_utility": _number(group["utility"].mean()),
            "feasible_rate": _number(group["feasible"].mean()),
            "mean_wall_time": _number(group["wall_time"].mean()),
            "row_count": float(len(group)),
        }
        for metric, value in metrics.items():
            records.append(
                SummaryRecord(
                    scale_id=int(scale_id),
                    weight_id=int(weight_id),
                    solver_id=str(solver_id),
                    metric=metric,
                    value=value,
                )
            )

    by_weight = frame.groupby(["weight_id", "solver_id"], sort=True).agg(
        utility=("utility", "mean"), wall_time=("wall_time", "mean")
    )
    for weight_id in sorted(frame["weight_id"].unique()):
        solvers = by_weight.loc[weight_id]
        if HEADLINE_SOLVER not in solvers.index:
            continue
        qa = solvers.loc[HEADLINE_SOLVER]
        for baseline in solvers.index:
            if baseline == HEADLINE_SOLVER:
                continue
            other = solvers.loc[baseline]
            gain = None
            if not (math.isnan(qa["utility"]) or math.isnan(other["utility"])) and other["utility"] != 0:
                gain = float((qa["utility"] - other["utility"]) / other["utility"])
            ratio = float(qa["wall_time"] / other["wall_time"]) if other["wall_time"] > 0 else None
            for metric, value in (("relative_utility_gain", gain), ("time_ratio", ratio)):
                records.append(
                    SummaryRecord(
                        weight_id=int(weight_id),
                        solver_id=HEADLINE_SOLVER,
                        baseline_id=str(baseline),
                        metric=metric,
                        value=value,
                    )
                )

    logger.debug("Summarized %d rows into %d records", len(rows), len(records))
    return records
