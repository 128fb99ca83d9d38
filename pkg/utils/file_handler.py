import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from config import settings
from models.linkage import LinkageClassDescriptor, SubschemeModel
from models.resolution import FreeResolution, ResolutionData
from services.characters import AdmissibleCharacter, IntFn
from services.errors import InvalidInputError

logger = logging.getLogger(__name__)

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

M = TypeVar("M", bound=BaseModel)
PathLike = Union[str, Path]


def validate_input_file(path: PathLike) -> Path:
    path = Path(path)
    if not path.is_file():
        raise InvalidInputError(f"Input file not found: {path}")

    file_ext = path.suffix.lower()
    allowed = settings.allowed_extensions()
    if file_ext not in allowed:
        raise InvalidInputError(
            f"Invalid file format {file_ext or '(none)'}. Allowed formats: {', '.join(sorted(allowed))}"
        )

    file_size = path.stat().st_size
    if file_size > settings.MAX_INPUT_BYTES:
        raise InvalidInputError(
            f"File too large. Maximum size is {settings.MAX_INPUT_BYTES // 1024}KB"
        )
    if file_size == 0:
        raise InvalidInputError(f"File is empty: {path}")
    return path


def load_json(path: PathLike) -> Any:
    path = validate_input_file(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"Malformed JSON in {path}: {e.msg} at line {e.lineno}")
    except UnicodeDecodeError:
        raise InvalidInputError(f"{path} is not UTF-8 text")


def _validated(model: Type[M], payload: Any, source: str) -> M:
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in e.errors()
        )
        raise InvalidInputError(f"Invalid {model.__name__} in {source}: {problems}")


def load_int_fn(path: PathLike) -> IntFn:
    return IntFn.from_json(load_json(path))


def load_character(path: PathLike) -> AdmissibleCharacter:
    return AdmissibleCharacter.of(load_int_fn(path))


def _resolve_references(payload: Any, base_dir: Path, key: str) -> Any:
    """Replace a string under key by the JSON document it names, relative to base_dir"""
    if not isinstance(payload, dict) or not isinstance(payload.get(key), str):
        return payload
    ref = base_dir / payload[key]
    logger.debug(f"resolving {key} reference {ref}")
    return {**payload, key: _class_payload(load_json(ref), ref.parent)}


def _class_payload(payload: Any, base_dir: Path) -> Any:
    return _resolve_references(payload, base_dir, "dual")


def load_class(source: Union[PathLike, Dict[str, Any]], base_dir: Optional[Path] = None) -> LinkageClassDescriptor:
    """Class descriptor from a file or an inline document; a string dual is a relative path"""
    if isinstance(source, dict):
        payload, origin = source, "inline class"
        base_dir = base_dir or Path.cwd()
    else:
        path = Path(source)
        payload, origin = load_json(path), str(path)
        base_dir = path.parent
    return _validated(LinkageClassDescriptor, _class_payload(payload, base_dir), origin)


def load_model(path: PathLike, cls: Optional[LinkageClassDescriptor] = None) -> SubschemeModel:
    """
    Model document {"class": ..., "h": ..., "theta": ...}.

    "class" may be inline or a path relative to the model file; an explicit
    cls overrides it.
    """
    path = Path(path)
    payload = load_json(path)
    if not isinstance(payload, dict):
        raise InvalidInputError(f"Model document in {path} must be a JSON object")
    if cls is not None:
        payload = {**payload, "class": cls}
    elif isinstance(payload.get("class"), str):
        payload = {**payload, "class": load_class(path.parent / payload["class"])}
    elif isinstance(payload.get("class"), dict):
        payload = {**payload, "class": _class_payload(payload["class"], path.parent)}
    return _validated(SubschemeModel, payload, str(path))


def load_resolution(path: PathLike) -> ResolutionData:
    return _validated(ResolutionData, load_json(path), str(path))


def load_free_resolution(path: PathLike) -> FreeResolution:
    payload = load_json(path)
    if isinstance(payload, list):
        payload = {"stages": payload}
    return _validated(FreeResolution, payload, str(path))


def fixture_path(name: str) -> Path:
    path = FIXTURES_DIR / name
    return path if path.suffix else path.with_suffix(".json")


def load_fixture_class(name: str) -> LinkageClassDescriptor:
    return load_class(fixture_path(name))


def write_output(text: str, output: PathLike) -> None:
    try:
        Path(output).write_text(text + "\n", encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"Failed to write {output}: {e}")
