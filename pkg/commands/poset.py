import logging
from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from commands.common import cli_errors, emit, output_option
from services.poset import domination_graph, hasse, to_dot, to_json
from utils.file_handler import load_class, write_output
from utils.text_parser import parse_window

logger = logging.getLogger(__name__)


class PosetFormat(str, Enum):
    DOT = "dot"
    JSON = "json"


@cli_errors
def poset(
    class_path: Path = typer.Option(..., "--class", help="Class descriptor file"),
    max_height: int = typer.Option(..., "--max-height", min=0),
    window: str = typer.Option(..., "--window", help="theta support window A,B"),
    fmt: PosetFormat = typer.Option(PosetFormat.DOT, "--format"),
    only_covers: bool = typer.Option(False, "--hasse", help="Keep covering relations only"),
    output: Optional[Path] = output_option,
):
    """Domination order on the models of a class inside a window."""
    G = domination_graph(load_class(class_path), max_height, parse_window(window))
    if only_covers:
        G = hasse(G)
    if fmt == PosetFormat.JSON:
        emit(to_json(G), output)
    elif output is not None:
        write_output(to_dot(G), output)
    else:
        typer.echo(to_dot(G))
