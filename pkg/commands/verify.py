import logging
from pathlib import Path
from typing import Optional

import typer

from commands.common import cli_errors, emit, finish, output_option, read_class
from config import settings
from models.oracle import ClaimName, SearchWindow
from services.oracle import check_claim
from utils.text_parser import parse_window

logger = logging.getLogger(__name__)


@cli_errors
def verify(
    claim: ClaimName = typer.Option(..., "--claim"),
    window: str = typer.Option(
        f"{settings.ORACLE_WINDOW_LO},{settings.ORACLE_WINDOW_HI}", "--window", help="Degree window A,B"
    ),
    max_abs: int = typer.Option(settings.ORACLE_MAX_ABS, "--max-abs", min=1),
    max_height: int = typer.Option(settings.ORACLE_MAX_HEIGHT, "--max-height", min=0),
    class_path: Optional[Path] = typer.Option(
        None, "--class", help="Class for model claims, two skew lines by default"
    ),
    output: Optional[Path] = output_option,
):
    """Check a claim exhaustively; exit 1 when a counterexample turns up."""
    lo, hi = parse_window(window)
    w = SearchWindow(lo=lo, hi=hi, max_abs=max_abs, max_height=max_height)
    report = check_claim(claim, w, read_class(class_path))
    emit(report, output)
    finish(report.holds)
