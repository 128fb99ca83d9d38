import logging
from pathlib import Path
from typing import Optional

import typer

from commands.common import (
    cli_errors,
    emit,
    emit_lines,
    finish,
    output_option,
    read_character,
    read_fn,
)
from services.domination import (
    BMInvariant,
    domination_violation,
    enumerate_dominating,
    eta_of,
    from_bm,
    relative_theta,
    theta_from_eta,
    to_bm,
)
from utils.text_parser import parse_int_list, parse_window

logger = logging.getLogger(__name__)

bm_app = typer.Typer(help="Conversion to and from b, g_2 <= ... <= g_r", no_args_is_help=True)

gamma_option = typer.Option(..., "--gamma", help="Dominated character")
sigma_option = typer.Option(..., "--sigma", help="Dominating character")
height_option = typer.Option(..., "--height", min=0, help="Height h")


@cli_errors
def dominate(
    gamma: str = gamma_option,
    sigma: str = sigma_option,
    height: int = height_option,
    output: Optional[Path] = output_option,
):
    """Does sigma dominate gamma at the given height?"""
    violation = domination_violation(read_character(gamma), read_character(sigma), height)
    payload = {"dominates": violation is None, "height": height}
    if violation is not None:
        clause, degree, message = violation
        payload.update({"clause": clause, "degree": degree, "message": message})
    emit(payload, output)
    finish(violation is None)


@cli_errors
def eta(
    gamma: str = gamma_option,
    sigma: str = sigma_option,
    height: int = height_option,
    output: Optional[Path] = output_option,
):
    """eta function of a domination, or the first failing eta condition."""
    outcome = eta_of(read_character(gamma), read_character(sigma), height)
    emit(outcome.to_dict(), output)
    finish(outcome.success)


@cli_errors
def theta(
    gamma: str = gamma_option,
    sigma: str = sigma_option,
    height: int = height_option,
    output: Optional[Path] = output_option,
):
    """theta function of a domination."""
    g, s = read_character(gamma), read_character(sigma)
    outcome = eta_of(g, s, height)
    if not outcome.success:
        emit(outcome.to_dict(), output)
        raise typer.Exit(code=1)
    value = theta_from_eta(g, height, outcome.eta, s.s0)
    emit({"success": True, "theta": value, "m": value.total()}, output)


@cli_errors
def relative(
    gamma: str = gamma_option,
    tau: str = typer.Option(..., "--tau", help="Lower dominating character"),
    sigma: str = sigma_option,
    h: int = typer.Option(..., "--h", min=0, help="Height of tau over gamma"),
    k: int = typer.Option(..., "--k", min=0, help="Height of sigma over gamma"),
    output: Optional[Path] = output_option,
):
    """theta of tau <=_{k-h} sigma computed through gamma."""
    value = relative_theta(
        read_character(gamma), read_character(tau), read_character(sigma), h, k
    )
    emit({"dominates": value is not None, "theta": value}, output)
    finish(value is not None)


@cli_errors
def dominating(
    gamma: str = gamma_option,
    height: int = height_option,
    window: str = typer.Option(..., "--window", help="eta support window A,B"),
    count_only: bool = typer.Option(False, "--count-only"),
    output: Optional[Path] = output_option,
):
    """Every character dominating gamma at the height with eta inside the window."""
    results = enumerate_dominating(read_character(gamma), height, parse_window(window))
    if count_only:
        emit(len(results), output)
        return
    emit_lines((wit.to_dict() for wit in results), output)


@bm_app.command("to")
@cli_errors
def bm_to(
    theta: str = typer.Option(..., "--theta", help="theta file or inline"),
    height: int = height_option,
    output: Optional[Path] = output_option,
):
    """b and g of a theta at height h."""
    emit(to_bm(read_fn(theta), height).to_dict(), output)


@bm_app.command("from")
@cli_errors
def bm_from(
    b: int = typer.Option(..., "--b"),
    g: str = typer.Option("", "--g", help="g_2,...,g_r"),
    output: Optional[Path] = output_option,
):
    """theta and h of b, g."""
    value, h = from_bm(BMInvariant(b=b, g=tuple(parse_int_list(g))))
    emit({"theta": value, "h": h}, output)
