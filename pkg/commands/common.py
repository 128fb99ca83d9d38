"""
Shared plumbing for the command modules: the error boundary, JSON output and
argument readers.
"""

import functools
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable, Optional

import typer
from pydantic import BaseModel, ValidationError

from config import settings
from models.linkage import LinkageClassDescriptor, SubschemeModel
from services.characters import AdmissibleCharacter, IntFn
from services.errors import LiaisonError
from utils.file_handler import load_class, load_int_fn, load_model, write_output
from utils.text_parser import looks_like_path, parse_int_fn_text

logger = logging.getLogger(__name__)


def cli_errors(func: Callable) -> Callable:
    """Map domain errors to their exit codes and a one-line diagnostic on stderr"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except LiaisonError as e:
            logger.info(f"{func.__name__} failed: {e.detail}")
            typer.echo(f"error: {e.detail}", err=True)
            raise typer.Exit(code=e.exit_code)
        except ValidationError as e:
            message = "; ".join(err["msg"] for err in e.errors())
            typer.echo(f"error: {message}", err=True)
            raise typer.Exit(code=2)
        except (typer.Exit, typer.Abort):
            raise
        except Exception:
            logger.exception(f"unexpected failure in {func.__name__}")
            raise

    return wrapper


def jsonable(value: Any) -> Any:
    if isinstance(value, IntFn):
        return value.to_json()
    if isinstance(value, AdmissibleCharacter):
        return value.fn.to_json()
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json", by_alias=True, exclude_none=True)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def render(payload: Any, indent: Optional[int] = None) -> str:
    indent = settings.JSON_INDENT if indent is None else indent
    return json.dumps(jsonable(payload), indent=indent or None, sort_keys=True)


def emit(payload: Any, output: Optional[Path] = None) -> None:
    text = render(payload)
    if output is None:
        typer.echo(text)
    else:
        write_output(text, output)


def emit_lines(rows: Iterable[Any], output: Optional[Path] = None) -> None:
    """JSON lines, one compact document per row"""
    text = "\n".join(render(row, indent=0) for row in rows)
    if output is None:
        if text:
            typer.echo(text)
    else:
        write_output(text, output)


def finish(ok: bool) -> None:
    if not ok:
        raise typer.Exit(code=1)


def read_fn(value: str) -> IntFn:
    """An IntFn from a JSON file, or inline text such as '{4:1,5:1}'"""
    if Path(value).is_file() or looks_like_path(value):
        return load_int_fn(value)
    return parse_int_fn_text(value)


def read_character(value: str) -> AdmissibleCharacter:
    return AdmissibleCharacter.of(read_fn(value))


def read_class(path: Optional[Path]) -> Optional[LinkageClassDescriptor]:
    return load_class(path) if path is not None else None


def read_model(path: Path, class_path: Optional[Path] = None) -> SubschemeModel:
    return load_model(path, read_class(class_path))


output_option = typer.Option(None, "--output", "-o", help="Write the result here instead of stdout")
class_option = typer.Option(None, "--class", help="Class descriptor overriding the one in the model file")
