"""
Command-line interface for volterraheat
"""
import logging
import math
import sys
from contextlib import contextmanager
from enum import Enum
from typing import Any, Iterator, List, Optional, Sequence

import click
import numpy as np
import pandas as pd
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from volterraheat import __version__
from volterraheat.bounds import bounds_report
from volterraheat.config import Settings
from volterraheat.errors import InvalidParameterError, NumericalError
from volterraheat.heat import HeatSolution
from volterraheat.odecheck import ForcingForm, full_equivalence_report
from volterraheat.series import ModelParams, eval_y_grid, tabulate_solution
from volterraheat.volterra import solve_volterra
from volterraheat.writers import get_writer

app = typer.Typer(
    help="volterraheat - Volterra equation, singular ODE and nonclassical heat problem",
    add_completion=False,
)
# Diagnostics go to stderr; data goes to --output or stdout
console = Console(stderr=True)
logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class ForcingChoice(str, Enum):
    """Values accepted by --forcing, including the equation-label aliases"""

    HALF = "half"
    UNIT = "unit"
    EQ18 = "eq18"
    PAPER_EQ1 = "paper-eq1"

    @property
    def form(self) -> ForcingForm:
        if self is ForcingChoice.EQ18:
            return ForcingForm.UNIT
        if self is ForcingChoice.PAPER_EQ1:
            return ForcingForm.HALF
        return ForcingForm(self.value)


def version_callback(value: bool):
    """Print version information and exit"""
    if value:
        console.print(f"volterraheat version: {__version__}")
        raise typer.Exit()


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


@app.callback()
def callback(
    version: Optional[bool] = typer.Option(
        None, "--version", callback=version_callback, is_eager=True,
        help="Show version information and exit"
    ),
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Enable debug diagnostics on stderr"
    ),
):
    """
    volterraheat - Volterra equation, singular ODE and nonclassical heat problem
    """
    _configure_logging(verbose)


@contextmanager
def _reporting_errors() -> Iterator[None]:
    # Validation problems exit with 1, numerical failures with 2.
    try:
        yield
    except ValidationError as e:
        console.print(f"[red]Error: invalid parameters: {e}")
        raise typer.Exit(1)
    except (InvalidParameterError, OSError) as e:
        console.print(f"[red]Error: {e}")
        raise typer.Exit(1)
    except NumericalError as e:
        console.print(f"[red]Numerical failure: {e}")
        logger.debug("Traceback", exc_info=True)
        raise typer.Exit(2)


def _records(frame: pd.DataFrame) -> List[dict]:
    # JSON has no NaN; missing entries become null.
    return frame.astype(object).where(frame.notna(), None).to_dict(orient="records")


def _emit(payload: Any, output_format: OutputFormat, output: Optional[str]) -> None:
    if isinstance(payload, pd.DataFrame) and output_format is OutputFormat.JSON:
        payload = _records(payload)
    writer = get_writer(output_format.value)
    if not writer.accepts(payload):
        raise InvalidParameterError(f"This command does not support --format {output_format.value}")
    if output is None:
        writer.write(payload, sys.stdout)
        return
    with open(output, "w", encoding="utf-8", newline="") as stream:
        writer.write(payload, stream)
    logger.info("Wrote %s", output)


LAMBDA_OPTION = typer.Option(..., "--lambda", help="Parameter lambda")
T_MAX_OPTION = typer.Option(1.0, "--t-max", help="Time horizon")
STEPS_OPTION = typer.Option(1000, "--steps", help="Grid intervals on [0, t-max]")
TOL_OPTION = typer.Option(1e-10, "--tol", help="Relative series tolerance")
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Output file (default: stdout)")


@app.command()
def series(
    lam: float = LAMBDA_OPTION,
    t_max: float = T_MAX_OPTION,
    steps: int = STEPS_OPTION,
    tol: float = TOL_OPTION,
    output: Optional[str] = OUTPUT_OPTION,
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help="Output format"),
):
    """
    Tabulate the series solution y = I - sqrt(2/pi) J
    """
    with _reporting_errors():
        settings = Settings.from_env(t_max=t_max, steps=steps, tol=tol)
        params = ModelParams(lam=lam, t_max=t_max)
        ts = np.linspace(0.0, params.t_max, settings.steps + 1)
        _emit(tabulate_solution(params.lam, ts, settings.tol), output_format, output)


@app.command()
def volterra(
    lam: float = LAMBDA_OPTION,
    t_max: float = T_MAX_OPTION,
    steps: int = STEPS_OPTION,
    tol: float = TOL_OPTION,
    output: Optional[str] = OUTPUT_OPTION,
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help="Output format"),
):
    """
    Compare the marching solution with the series solution
    """
    with _reporting_errors():
        settings = Settings.from_env(t_max=t_max, steps=steps, tol=tol)
        params = ModelParams(lam=lam, t_max=t_max)
        numeric = solve_volterra(params.lam, params.t_max, settings.steps)
        exact = eval_y_grid(params.lam, numeric.times, settings.tol)
        frame = pd.DataFrame({
            "t": numeric.times,
            "y_numeric": numeric.values,
            "y_series": exact,
            "abs_diff": np.abs(numeric.values - exact),
        })
        logger.info("Largest difference %.3e", float(frame["abs_diff"].max()))
        _emit(frame, output_format, output)


@app.command()
def heat(
    lam: float = LAMBDA_OPTION,
    h0: float = typer.Option(1.0, "--h0", help="Initial temperature"),
    t_max: float = T_MAX_OPTION,
    x_max: Optional[float] = typer.Option(None, "--x-max", help="Spatial extent (default: 8 sqrt(t-max))"),
    steps: int = typer.Option(64, "--steps", help="Time intervals on [0, t-max]"),
    x_points: int = typer.Option(64, "--x-points", help="Positions on [0, x-max]"),
    output: Optional[str] = OUTPUT_OPTION,
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help="Output format"),
):
    """
    Tabulate the temperature u(x, t) and the boundary flux
    """
    with _reporting_errors():
        settings = Settings.from_env(t_max=t_max, steps=steps, h0=h0, x_max=x_max, x_points=x_points)
        params = ModelParams(lam=lam, t_max=t_max, h0=h0)
        xs = np.linspace(0.0, settings.spatial_extent, settings.x_points)
        ts = np.linspace(0.0, params.t_max, settings.steps + 1)[1:]
        solution = HeatSolution(
            params.lam, params.h0, settings.quad_panels, settings.quad_order, term_cap=settings.term_cap
        )
        temperatures = solution.sweep(xs, ts)
        flux = solution.flux0(ts)
        frame = pd.DataFrame({
            "x": np.tile(xs, ts.size),
            "t": np.repeat(ts, xs.size),
            "u": temperatures.ravel(),
            "flux0": np.where(np.tile(xs, ts.size) == 0.0, np.repeat(flux, xs.size), math.nan),
        })
        _emit(frame, output_format, output)


@app.command()
def equivalence(
    lam: float = LAMBDA_OPTION,
    t_max: float = T_MAX_OPTION,
    steps: int = STEPS_OPTION,
    tol: float = TOL_OPTION,
    forcing: ForcingChoice = typer.Option(
        ForcingChoice.HALF, "--forcing",
        help="Forcing coefficient: half or paper-eq1 for lambda/(2 sqrt(pi)), unit or eq18 for lambda/sqrt(pi)",
    ),
    output: Optional[str] = OUTPUT_OPTION,
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="Output format"),
):
    """
    Report how well the solution satisfies the ODE, its conditions and identities
    """
    with _reporting_errors():
        if output_format is not OutputFormat.JSON:
            raise InvalidParameterError("equivalence writes JSON only")
        settings = Settings.from_env(t_max=t_max, steps=steps, tol=tol)
        params = ModelParams(lam=lam, t_max=t_max)
        report = full_equivalence_report(params, settings.steps, settings.tol, forcing.form, settings)
        if not report.passed:
            logger.warning("Equivalence checks failed for lambda=%r", params.lam)
        _emit(report.to_dict(), output_format, output)


@app.command()
def bounds(
    epsilon: float = typer.Option(0.5, "--epsilon", help="Safety fraction in (0, 1)"),
    t_max: float = T_MAX_OPTION,
    h0: float = typer.Option(1.0, "--h0", help="Initial temperature"),
    x_max: Optional[float] = typer.Option(None, "--x-max", help="Spatial extent (default: 8 sqrt(t-max))"),
    steps: int = typer.Option(512, "--steps", help="Time grid intervals for sup norms"),
    samples: int = typer.Option(9, "--samples", help="Lambda samples"),
    workers: int = typer.Option(1, "--workers", help="Threads for per-lambda work"),
    output: Optional[str] = OUTPUT_OPTION,
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="Output format"),
):
    """
    Measure the boundedness and Lipschitz estimates against their bounds
    """
    with _reporting_errors():
        if output_format is not OutputFormat.JSON:
            raise InvalidParameterError("bounds writes JSON only")
        settings = Settings.from_env(
            epsilon=epsilon, t_max=t_max, h0=h0, x_max=x_max,
            grid_points=steps, lambda_samples=samples, workers=workers,
        )
        params = ModelParams(lam=0.0, t_max=t_max, h0=h0, epsilon=epsilon)
        report = bounds_report(params, settings)
        if not report.passed:
            logger.warning("Bounds checks failed for epsilon=%r, t_max=%r", epsilon, t_max)
        _emit(report.to_dict(), output_format, output)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI and return its exit code

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        0 on success, 1 on usage or validation errors, 2 on numerical failures
    """
    command = typer.main.get_command(app)
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = command.main(args=args, prog_name="volterraheat", standalone_mode=False)
    except Exception as e:
        if _is_click_error(e, "ClickException"):
            e.show()
            return 1
        if _is_click_error(e, "Abort"):
            return 1
        if _is_click_error(e, "Exit"):
            return e.exit_code
        raise
    return result if isinstance(result, int) else 0


def _is_click_error(error: Exception, kind: str) -> bool:
    # Newer typer releases ship their own copy of click whose exceptions do
    # not derive from the installed click, so match the class name too.
    base = getattr(click.exceptions, kind)
    return isinstance(error, base) or any(cls.__name__ == kind for cls in type(error).__mro__)


def main() -> None:
    """Console script entry point"""
    sys.exit(run())
