import logging
from pathlib import Path
from typing import Optional

import typer

from commands.common import cli_errors, emit, finish, output_option, read_fn
from config import settings
from services.characters import classify
from services.errors import InvalidInputError
from services.hilbert import gamma_from_free_resolution, gamma_from_N_data
from utils.file_handler import load_free_resolution, load_resolution

logger = logging.getLogger(__name__)

app = typer.Typer(help="Characters and admissibility", no_args_is_help=True)


@app.command("classify")
@cli_errors
def classify_command(
    fn: str = typer.Option(..., "--fn", help="Function file or inline '{0:-1,1:1}'"),
    output: Optional[Path] = output_option,
):
    """Classify a function as not-a-character, character or admissible."""
    verdict = classify(read_fn(fn))
    emit(verdict.to_dict(), output)
    finish(verdict.is_admissible)


@app.command("gamma")
@cli_errors
def gamma_command(
    free_resolution: Optional[Path] = typer.Option(None, "--free-resolution", help="Free resolution stages"),
    n_data: Optional[Path] = typer.Option(None, "--n-data", help="N-type resolution data"),
    n: int = typer.Option(settings.DEFAULT_DIMENSION, "--n", help="Ambient dimension"),
    output: Optional[Path] = output_option,
):
    """gamma-character from a free resolution or from N-type data."""
    if (free_resolution is None) == (n_data is None):
        raise InvalidInputError("give exactly one of --free-resolution and --n-data")
    if free_resolution is not None:
        gamma = gamma_from_free_resolution(load_free_resolution(free_resolution).stages, n)
    else:
        gamma = gamma_from_N_data(load_resolution(n_data), n)
    emit({"gamma": gamma, "s0": gamma.s0, "s1": gamma.s1}, output)
