import logging
from pathlib import Path
from typing import Optional

import typer

from commands.common import (
    class_option,
    cli_errors,
    emit,
    emit_lines,
    finish,
    output_option,
    read_fn,
    read_model,
)
from models.linkage import IntegralVariant, LinkKind, SubschemeModel
from services.errors import InvalidInputError
from services.hilbert import degree_of
from services.linkage import (
    contains_minimal,
    double_link,
    enumerate_models,
    integral_chain,
    integral_necessary,
    invariants,
    link_dual,
    link_minimal_ci,
    lr_decompose,
    minimal_element,
    minimal_gap,
    minimal_M,
    model_gamma,
    s1_t1_deformable,
    t1_bound,
    t1_witness_chain,
    unique_minimal,
)
from utils.file_handler import load_class
from utils.text_parser import parse_pair, parse_window

logger = logging.getLogger(__name__)

model_app = typer.Typer(help="Subscheme models (class, h, theta)", no_args_is_help=True)
class_app = typer.Typer(help="Linkage class descriptors", no_args_is_help=True)
decompose_app = typer.Typer(help="Chains of double links between models", no_args_is_help=True)

model_option = typer.Option(..., "--model", help="Model file")
required_class_option = typer.Option(..., "--class", help="Class descriptor file")


def _steps(steps) -> list:
    return [step.model_dump(mode="json") for step in steps]


@model_app.command("invariants")
@cli_errors
def model_invariants(
    class_path: Path = required_class_option,
    height: int = typer.Option(..., "--height", min=0),
    theta: str = typer.Option("{}", "--theta", help="theta file or inline"),
    output: Optional[Path] = output_option,
):
    """s0X, s1X, eX, degree, gammaX and etaX of (class, h, theta)."""
    X = SubschemeModel(cls=load_class(class_path), h=height, theta=read_fn(theta))
    emit(invariants(X), output)


@model_app.command("gamma")
@cli_errors
def model_gamma_command(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    output: Optional[Path] = output_option,
):
    """gamma-character of a model."""
    gamma = model_gamma(read_model(model, class_path))
    emit({"gamma": gamma, "s0": gamma.s0, "s1": gamma.s1, "degree": degree_of(gamma)}, output)


@model_app.command("t1-chain")
@cli_errors
def model_t1_chain(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    output: Optional[Path] = output_option,
):
    """Elementary double links attaining the t1 bound."""
    witness = t1_witness_chain(read_model(model, class_path))
    emit(
        {
            "bound": witness.bound,
            "certificate": witness.certificate(),
            "chain": _steps(witness.chain),
        },
        output,
    )


@model_app.command("deformable")
@cli_errors
def model_deformable(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    output: Optional[Path] = output_option,
):
    """Can the deformation class reach s1 = t1?"""
    value = s1_t1_deformable(read_model(model, class_path))
    emit(value, output)
    finish(value)


@model_app.command("minimal-m")
@cli_errors
def model_minimal_m(
    class_path: Path = required_class_option,
    output: Optional[Path] = output_option,
):
    """Least model admitting s1 = t1."""
    emit(minimal_M(load_class(class_path)).summary(), output)


@model_app.command("contains-minimal")
@cli_errors
def model_contains_minimal(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    output: Optional[Path] = output_option,
):
    """Does every representative contain the unique minimal element?"""
    value = contains_minimal(read_model(model, class_path))
    emit(value, output)
    finish(value)


@class_app.command("info")
@cli_errors
def class_info(
    class_path: Path = required_class_option,
    output: Optional[Path] = output_option,
):
    """Constants of a class and of its minimal element."""
    cls = load_class(class_path)
    emit(
        {
            "name": cls.name,
            "n": cls.n,
            "s0": cls.s0,
            "s1": cls.s1,
            "t1": cls.t1,
            "e": cls.e,
            "degree": degree_of(cls.gamma),
            "minimal_gap": minimal_gap(cls),
            "has_dual": cls.has_dual(),
        },
        output,
    )


@class_app.command("unique-minimal")
@cli_errors
def class_unique_minimal(
    class_path: Path = required_class_option,
    output: Optional[Path] = output_option,
):
    """Is the minimal element unique (s0 - e - n - 1 > 0)?"""
    cls = load_class(class_path)
    value = unique_minimal(cls)
    emit({"unique_minimal": value, "minimal_gap": minimal_gap(cls)}, output)
    finish(value)


@cli_errors
def double_link_command(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    link_type: str = typer.Option(..., "--type", help="S,H"),
    kind: LinkKind = typer.Option(LinkKind.ELEMENTARY, "--kind"),
    output: Optional[Path] = output_option,
):
    """Double link of type (S, H)."""
    s, h = parse_pair(link_type, "double link type")
    emit(double_link(read_model(model, class_path), s, h, kind), output)


@cli_errors
def link_command(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    degrees: str = typer.Option(..., "--degrees", help="S,T"),
    output: Optional[Path] = output_option,
):
    """Residual in a complete intersection of degrees (S, T)."""
    s, t = parse_pair(degrees, "degrees")
    emit(link_dual(read_model(model, class_path), s, t), output)


@cli_errors
def link_minimal_ci_command(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    t: Optional[int] = typer.Option(None, "--t", help="Second degree, defaults to the t1 bound"),
    output: Optional[Path] = output_option,
):
    """Residual in the complete intersection of degrees (s0X, t)."""
    emit(link_minimal_ci(read_model(model, class_path), t), output)


@cli_errors
def t1_bound_command(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    output: Optional[Path] = output_option,
):
    """Sharp lower bound for t1 in the deformation class."""
    emit(t1_bound(read_model(model, class_path)), output)


@cli_errors
def integral_check(
    model: Path = model_option,
    class_path: Optional[Path] = class_option,
    variant: IntegralVariant = typer.Option(IntegralVariant.STRICT_S0, "--variant"),
    output: Optional[Path] = output_option,
):
    """Numeric necessary conditions for an integral representative."""
    verdict = integral_necessary(read_model(model, class_path), variant)
    emit(verdict, output)
    finish(verdict.passed)


@decompose_app.command("lr")
@cli_errors
def decompose_lr(
    source: Path = typer.Option(..., "--from", help="Dominated model"),
    target: Path = typer.Option(..., "--to", help="Dominating model"),
    class_path: Optional[Path] = class_option,
    output: Optional[Path] = output_option,
):
    """Basic double links of height one from one model to another."""
    steps = lr_decompose(read_model(source, class_path), read_model(target, class_path))
    emit({"steps": _steps(steps)}, output)


@decompose_app.command("integral")
@cli_errors
def decompose_integral(
    source: Path = typer.Option(..., "--from", help="Integral model"),
    target: Path = typer.Option(..., "--to", help="Dominating model"),
    class_path: Optional[Path] = class_option,
    variant: str = typer.Option(
        IntegralVariant.STRICT_S0.value, "--variant", help="strict-s0, combined-s1 or none"
    ),
    output: Optional[Path] = output_option,
):
    """Elementary double links between integral models."""
    try:
        chosen = None if variant == "none" else IntegralVariant(variant)
    except ValueError:
        raise InvalidInputError(f"unknown variant {variant!r}")
    steps = integral_chain(
        read_model(source, class_path), read_model(target, class_path), chosen
    )
    emit({"steps": _steps(steps)}, output)


@cli_errors
def enumerate_command(
    class_path: Path = required_class_option,
    height: int = typer.Option(..., "--height", min=0),
    window: str = typer.Option(..., "--window", help="theta support window A,B"),
    count_only: bool = typer.Option(False, "--count-only"),
    output: Optional[Path] = output_option,
):
    """Models of one height with theta inside the window, as JSON lines."""
    models = enumerate_models(load_class(class_path), height, parse_window(window))
    if count_only:
        emit(len(models), output)
        return
    emit_lines((X.summary() for X in models), output)


@model_app.command("minimal")
@cli_errors
def minimal_command(
    class_path: Path = required_class_option,
    output: Optional[Path] = output_option,
):
    """Minimal element of a class as a model document."""
    emit(minimal_element(load_class(class_path)), output)
