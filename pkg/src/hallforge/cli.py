from __future__ import annotations

import json
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional

import typer

from hallforge.config import RunConfig
from hallforge.errors import HallforgeError
from hallforge.logging import configure_logging, get_logger
from hallforge.pipeline.driver import ALGEBRAS, Driver
from hallforge.runner import DEFAULT_CONFIG, create_driver

logger = get_logger(__name__)

app = typer.Typer(help="Exact modified Ringel-Hall algebra and Drinfeld double engine")

EXIT_FAILED = 1
EXIT_ERROR = 2

ConfigOpt = typer.Option(DEFAULT_CONFIG, "--config", "-c", help="Path to run configuration file")
QuiverOpt = typer.Option(None, "--quiver", help="Quiver preset (a1, a2, jordan) or quiver JSON file")
QOpt = typer.Option(None, "--q", help="Prime field size")
DimBoundOpt = typer.Option(None, "--dim-bound", help="Total dimension window")
ChecksOpt = typer.Option(None, "--checks", help="Comma-separated check names")
SeedOpt = typer.Option(None, "--seed", help="Seed for sampled checks")
OutOpt = typer.Option(None, "--out", help="Write the report to this file instead of stdout")
FormatOpt = typer.Option(None, "--format", help="Table format: json or csv")
CapHomOpt = typer.Option(None, "--cap-hom", help="Cap on Hom-space enumeration")
CapSubspaceOpt = typer.Option(None, "--cap-subspace", help="Cap on subspace enumeration")
CapComplexOpt = typer.Option(None, "--cap-complex", help="Cap on complex enumeration")


@app.callback()
def main(log_level: str = typer.Option("WARNING", "--log-level", help="structlog level on stderr")) -> None:
    configure_logging(log_level)


@contextmanager
def _exit_codes() -> Iterator[None]:
    try:
        yield
    except HallforgeError as exc:
        logger.error("Run aborted", error=type(exc).__name__, detail=str(exc))
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=EXIT_ERROR) from exc


def _load_driver(
    config: Path,
    quiver: Optional[str],
    q: Optional[int],
    dim_bound: Optional[int],
    checks: Optional[str],
    seed: Optional[int],
    out: Optional[Path],
    fmt: Optional[str],
    cap_hom: Optional[int],
    cap_subspace: Optional[int],
    cap_complex: Optional[int],
) -> Driver:
    overrides = {
        "quiver": quiver,
        "q": q,
        "dim_bound": dim_bound,
        "checks": _split(checks),
        "seed": seed,
        "out": out,
        "format": fmt,
    }
    caps = {"hom_scan": cap_hom, "subspace_scan": cap_subspace, "complex_scan": cap_complex}
    return create_driver(config, overrides=overrides, cap_overrides=caps)


def _split(value: Optional[str]) -> Optional[List[str]]:
    if value is None:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


def _emit(text: str, config: RunConfig) -> None:
    if config.output.path is None:
        typer.echo(text, nl=False)
        return
    config.output.path.parent.mkdir(parents=True, exist_ok=True)
    config.output.path.write_text(text, encoding="utf-8")
    logger.info("Report written", path=str(config.output.path))


@app.command("classes")
def list_classes(
    config: Path = ConfigOpt,
    quiver: Optional[str] = QuiverOpt,
    q: Optional[int] = QOpt,
    dim_bound: Optional[int] = DimBoundOpt,
    out: Optional[Path] = OutOpt,
    fmt: Optional[str] = FormatOpt,
    cap_hom: Optional[int] = CapHomOpt,
    cap_subspace: Optional[int] = CapSubspaceOpt,
    cap_complex: Optional[int] = CapComplexOpt,
) -> None:
    """Isomorphism classes up to the dimension window with |Aut| and |End|."""
    with _exit_codes():
        driver = _load_driver(config, quiver, q, dim_bound, None, None, out, fmt, cap_hom, cap_subspace, cap_complex)
        frame = driver.classes_frame()
        if driver.config.output.format == "csv":
            text = frame.to_csv(index=False)
        else:
            text = frame.to_json(orient="records", lines=True)
            text = text if text.endswith("\n") else text + "\n"
        _emit(text, driver.config)
        logger.info("Listed classes", quiver=driver.provider.quiver.name, classes=len(frame))


@app.command("product")
def product(
    lhs: str = typer.Argument(..., help="Left factor literal"),
    rhs: str = typer.Argument(..., help="Right factor literal"),
    algebra: str = typer.Option("mrh", "--algebra", help=f"One of {', '.join(ALGEBRAS)}"),
    config: Path = ConfigOpt,
    quiver: Optional[str] = QuiverOpt,
    q: Optional[int] = QOpt,
    dim_bound: Optional[int] = DimBoundOpt,
    out: Optional[Path] = OutOpt,
    fmt: Optional[str] = FormatOpt,
    cap_hom: Optional[int] = CapHomOpt,
    cap_subspace: Optional[int] = CapSubspaceOpt,
    cap_complex: Optional[int] = CapComplexOpt,
) -> None:
    """Normal-form expansion of lhs * rhs with exact coefficients."""
    with _exit_codes():
        driver = _load_driver(config, quiver, q, dim_bound, None, None, out, fmt, cap_hom, cap_subspace, cap_complex)
        if driver.config.output.format == "csv":
            text = driver.product_frame(lhs, rhs, algebra).to_csv(index=False)
        else:
            result = driver.product(lhs, rhs, algebra)
            payload = {"algebra": algebra, "lhs": lhs, "rhs": rhs, "result": result["text"], "terms": result["records"]}
            text = json.dumps(payload, sort_keys=True) + "\n"
        _emit(text, driver.config)


@app.command("verify")
def verify(
    config: Path = ConfigOpt,
    quiver: Optional[str] = QuiverOpt,
    q: Optional[int] = QOpt,
    dim_bound: Optional[int] = DimBoundOpt,
    checks: Optional[str] = ChecksOpt,
    seed: Optional[int] = SeedOpt,
    out: Optional[Path] = OutOpt,
    cap_hom: Optional[int] = CapHomOpt,
    cap_subspace: Optional[int] = CapSubspaceOpt,
    cap_complex: Optional[int] = CapComplexOpt,
) -> None:
    """Run the verification suites; one JSON line per instance after a header line."""
    with _exit_codes():
        driver = _load_driver(config, quiver, q, dim_bound, checks, seed, out, None, cap_hom, cap_subspace, cap_complex)
        results = driver.run()
    failed = [name for name, result in results.items() if not result.passed]
    for result in results.values():
        logger.info("Check summary", check=result.name, summary=repr(result))
    if failed:
        logger.warning("Checks failed", checks=failed)
        raise typer.Exit(code=EXIT_FAILED)


@app.command("plan")
def plan(
    config: Path = ConfigOpt,
    quiver: Optional[str] = QuiverOpt,
    q: Optional[int] = QOpt,
    dim_bound: Optional[int] = DimBoundOpt,
    checks: Optional[str] = ChecksOpt,
) -> None:
    """List the checks verify would run, in order."""
    with _exit_codes():
        driver = _load_driver(config, quiver, q, dim_bound, checks, None, None, None, None, None, None)
        planned = driver.plan()
        logger.info("Planned checks", checks=planned)
        for name in planned:
            typer.echo(name)


if __name__ == "__main__":
    app()
