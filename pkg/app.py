import logging
import sys
from typing import Optional

import typer

from commands import char, domination, hilbert, linkage, poset, verify
from config import settings

app = typer.Typer(
    name="liaison",
    help="Exact integer calculus of even linkage classes of codimension-two subschemes",
    no_args_is_help=True,
    add_completion=False,
)

# Command groups
app.add_typer(char.app, name="char")
app.add_typer(linkage.model_app, name="model")
app.add_typer(linkage.class_app, name="class")
app.add_typer(linkage.decompose_app, name="decompose")
app.add_typer(domination.bm_app, name="bm")
app.add_typer(hilbert.resolution_app, name="resolution")
app.add_typer(hilbert.oracle_app, name="oracle")

# Top-level commands
app.command("dominate")(domination.dominate)
app.command("eta")(domination.eta)
app.command("theta")(domination.theta)
app.command("relative")(domination.relative)
app.command("dominating")(domination.dominating)
app.command("double-link")(linkage.double_link_command)
app.command("link")(linkage.link_command)
app.command("link-minimal-ci")(linkage.link_minimal_ci_command)
app.command("t1-bound")(linkage.t1_bound_command)
app.command("integral-check")(linkage.integral_check)
app.command("enumerate")(linkage.enumerate_command)
app.command("poset")(poset.poset)
app.command("hilbert")(hilbert.hilbert)
app.command("verify")(verify.verify)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help=f"Logging level, {settings.LOG_LEVEL} by default"
    ),
):
    """Logs go to stderr so stdout stays byte-stable."""
    logging.basicConfig(
        level=(log_level or settings.LOG_LEVEL).upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


if __name__ == "__main__":
    app()
