from .config import PeriodMatrixSource, RunConfig, parse_point
from .render import ReportDocument, load_document, render, split_rows
from .results import BoundRow, HyperellipticSummary, RankScanResult, bound_table
from .runner import RunOutcome, execute, export_to
