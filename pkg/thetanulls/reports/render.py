"""
Report documents and their three renderings: a human table (tabulate), CSV
(pandas) and the machine-readable JSON object that replay consumes.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict
from tabulate import tabulate

from ..ppav import PeriodMatrixFile
from .config import OutputFormat, RunConfig

HUMAN_LIST_LIMIT = 6


class ReportDocument(BaseModel):
    """One command run: the effective config, the period matrix used, and the result."""
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    command: str
    config: RunConfig
    period_matrix: Optional[PeriodMatrixFile] = None
    result: Any = None


def load_document(path: Union[str, Path]) -> ReportDocument:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ValueError(f"cannot read report {path}: {e}") from None
    return ReportDocument.model_validate_json(text)


def result_data(result: Any) -> Any:
    if isinstance(result, BaseModel):
        return result.model_dump(mode="json")
    if isinstance(result, list):
        return [result_data(item) for item in result]
    return result


def _cell(value: Any, short: bool) -> Any:
    if isinstance(value, list):
        if short and len(value) > HUMAN_LIST_LIMIT:
            return f"{_fmt(value[0])} ... {_fmt(value[-1])} ({len(value)})"
        return " ".join(_fmt(v) for v in value)
    return value


def _fmt(value: Any) -> str:
    return f"{value:.6g}" if isinstance(value, float) else str(value)


def _flatten(data: Dict[str, Any], short: bool, prefix: str = "") -> Dict[str, Any]:
    flat = {}
    for key, value in data.items():
        if isinstance(value, dict):
            flat.update(_flatten(value, short, f"{prefix}{key}."))
        else:
            flat[f"{prefix}{key}"] = _cell(value, short)
    return flat


def split_rows(data: Any, short: bool = False) -> Tuple[Dict[str, Any], List[Dict[str, Any]]]:
    """(summary fields, table rows) of a result.

    A list becomes the rows. A dict holding exactly one list of records uses
    those records as rows and its other fields as the summary. Anything else is
    a single row.
    """
    if isinstance(data, list):
        return {}, [_flatten(item, short) if isinstance(item, dict) else {"value": item} for item in data]
    if not isinstance(data, dict):
        return {}, [{"value": data}]
    nested = [k for k, v in data.items() if isinstance(v, list) and v and all(isinstance(i, dict) for i in v)]
    if len(nested) == 1:
        key = nested[0]
        summary = _flatten({k: v for k, v in data.items() if k != key}, short)
        return summary, [_flatten(item, short) for item in data[key]]
    return {}, [_flatten(data, short)]


def render(document: ReportDocument, fmt: OutputFormat, columns: Optional[List[str]] = None) -> str:
    if fmt == "json":
        return document.model_dump_json(indent=2)
    data = result_data(document.result)
    if fmt == "csv":
        _, rows = split_rows(data)
        return pd.DataFrame(rows, columns=columns if not rows else None).to_csv(index=False)

    summary, rows = split_rows(data, short=True)
    config = document.config.model_dump(exclude_none=True, exclude={"format"})
    lines = [f"{document.command}: " + ", ".join(f"{k}={v}" for k, v in config.items() if k != "command")]
    if summary:
        lines.append(tabulate(list(summary.items()), tablefmt="plain"))
    if len(rows) == 1 and not summary:
        lines.append(tabulate(list(rows[0].items()), headers=["field", "value"], tablefmt="simple"))
    elif rows:
        lines.append(tabulate(rows, headers="keys", tablefmt="simple"))
    elif columns:
        lines.append(tabulate([], headers=columns, tablefmt="simple"))
    return "\n".join(lines) + "\n"
