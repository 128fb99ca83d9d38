import logging
from pathlib import Path
from typing import Optional

import typer

from commands.common import cli_errors, emit, finish, output_option, read_character
from config import settings
from models.oracle import SubschemeConfig, SubschemeKind
from services.errors import InvalidInputError
from services.hilbert import (
    align_for_domination,
    bootstrap_minimal_resolution,
    degree_genus,
    gamma_from_resolution,
    hilbert_function,
    hilbert_polynomial,
    minimize_resolution,
    resolution_domination_check,
    resolution_double_link,
    resolution_link,
)
from services.oracle import hilbert_oracle, oracle_gamma
from utils.file_handler import load_class, load_resolution
from utils.text_parser import parse_int_list, parse_pair

logger = logging.getLogger(__name__)

resolution_app = typer.Typer(help="Twist-level resolution shapes", no_args_is_help=True)
oracle_app = typer.Typer(help="Closed-form Hilbert functions of fixture subschemes", no_args_is_help=True)

resolution_option = typer.Option(..., "--resolution", help="Resolution data file")
dimension_option = typer.Option(settings.DEFAULT_DIMENSION, "--n", min=3, help="Ambient dimension")


@cli_errors
def hilbert(
    gamma: str = typer.Option(..., "--gamma", help="gamma-character file or inline"),
    at: Optional[int] = typer.Option(None, "--at", help="Evaluate h0 of the ideal sheaf at this twist"),
    polynomial: bool = typer.Option(False, "--polynomial", help="Hilbert polynomial, constant term first"),
    degree_and_genus: bool = typer.Option(False, "--degree-genus"),
    n: int = dimension_option,
    output: Optional[Path] = output_option,
):
    """Hilbert function, polynomial, degree and genus of a gamma-character."""
    if sum([at is not None, polynomial, degree_and_genus]) > 1:
        raise InvalidInputError("choose one of --at, --polynomial and --degree-genus")
    character = read_character(gamma)
    if at is not None:
        emit(hilbert_function(character, n, at), output)
    elif polynomial:
        emit(hilbert_polynomial(character, n), output)
    else:
        degree, genus = degree_genus(character, n)
        emit({"degree": degree, "genus": genus}, output)


@resolution_app.command("gamma")
@cli_errors
def resolution_gamma(
    resolution: Path = resolution_option,
    n: int = dimension_option,
    output: Optional[Path] = output_option,
):
    """gamma-character of N-type or E-type resolution data."""
    gamma = gamma_from_resolution(load_resolution(resolution), n)
    emit({"gamma": gamma, "s0": gamma.s0, "s1": gamma.s1}, output)


@resolution_app.command("double-link")
@cli_errors
def resolution_double_link_command(
    resolution: Path = resolution_option,
    link_type: str = typer.Option(..., "--type", help="S,H"),
    output: Optional[Path] = output_option,
):
    """Twist transform of a double link of type (S, H)."""
    s, h = parse_pair(link_type, "double link type")
    emit(resolution_double_link(load_resolution(resolution), s, h), output)


@resolution_app.command("link")
@cli_errors
def resolution_link_command(
    resolution: Path = resolution_option,
    degrees: str = typer.Option(..., "--degrees", help="S,T"),
    minimize: bool = typer.Option(False, "--minimize", help="Cancel shared twists afterwards"),
    output: Optional[Path] = output_option,
):
    """Mapping cone of a link by a complete intersection of degrees (S, T)."""
    s, t = parse_pair(degrees, "degrees")
    linked = resolution_link(load_resolution(resolution), s, t)
    emit(minimize_resolution(linked) if minimize else linked, output)


@resolution_app.command("minimize")
@cli_errors
def resolution_minimize(
    resolution: Path = resolution_option,
    output: Optional[Path] = output_option,
):
    """Cancel twists shared by the kernel and middle terms."""
    emit(minimize_resolution(load_resolution(resolution)), output)


@resolution_app.command("dominates")
@cli_errors
def resolution_dominates(
    source: Path = typer.Option(..., "--from", help="N-type resolution of the dominated scheme"),
    target: Path = typer.Option(..., "--to", help="N-type resolution of the dominating scheme"),
    output: Optional[Path] = output_option,
):
    """Sharp comparison of two N-type resolutions sharing a core."""
    r, s, h1, h2 = align_for_domination(load_resolution(source), load_resolution(target))
    value = resolution_domination_check(r, s, h1, h2)
    emit({"dominates": value, "r": r, "s": s, "height": h2 - h1}, output)
    finish(value)


@resolution_app.command("bootstrap")
@cli_errors
def resolution_bootstrap(
    class_path: Path = typer.Option(..., "--class", help="Class descriptor with a dual"),
    p: str = typer.Option(..., "--p", help="Kernel twists, comma separated"),
    q: str = typer.Option("", "--q", help="Middle twists, comma separated"),
    output: Optional[Path] = output_option,
):
    """Minimal N-type resolution of a class with both core functions."""
    cls = load_class(class_path)
    res = bootstrap_minimal_resolution(
        cls.gamma, cls.dual_class().gamma, cls.t1, parse_int_list(p), parse_int_list(q), cls.n
    )
    emit(res, output)


def _config(kind: SubschemeKind, a: Optional[int], b: Optional[int], d: Optional[int]) -> SubschemeConfig:
    return SubschemeConfig(kind=kind, a=a, b=b, d=d)


@oracle_app.command("h0")
@cli_errors
def oracle_h0(
    kind: SubschemeKind = typer.Option(..., "--kind"),
    at: int = typer.Option(..., "--at"),
    a: Optional[int] = typer.Option(None, "--a"),
    b: Optional[int] = typer.Option(None, "--b"),
    d: Optional[int] = typer.Option(None, "--d"),
    output: Optional[Path] = output_option,
):
    """h0 of the ideal sheaf of a fixture subscheme of P^3."""
    emit(hilbert_oracle(_config(kind, a, b, d), at), output)


@oracle_app.command("gamma")
@cli_errors
def oracle_gamma_command(
    kind: SubschemeKind = typer.Option(..., "--kind"),
    a: Optional[int] = typer.Option(None, "--a"),
    b: Optional[int] = typer.Option(None, "--b"),
    d: Optional[int] = typer.Option(None, "--d"),
    upto: int = typer.Option(12, "--upto", help="Last twist sampled"),
    output: Optional[Path] = output_option,
):
    """gamma-character of a fixture subscheme from its h0 values."""
    gamma = oracle_gamma(_config(kind, a, b, d), upto)
    emit({"gamma": gamma, "s0": gamma.s0, "s1": gamma.s1}, output)
