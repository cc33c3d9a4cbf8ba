"""
Command-line entry point.

    python cli.py pd --input tree.txt --bounds --trace
    python cli.py ara --input tree.txt --verify sv,oracle --output tls.json
    python cli.py ara --family double-star 2 3
    python cli.py tls verify --input tls.json
    python cli.py sv check --input tls.json
    python cli.py oracle --input tls.json --fields 2,3
    python cli.py resolution --family double-star 2 3 --matrices --json
    python cli.py family line 7

Exit codes: 0 success, 1 a verification failed, 2 bad input.
Logs go to stderr so --json output stays parseable.
"""
import json
import logging
import sys
from pathlib import Path
from typing import Callable

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.table import Table

sys.path.insert(0, str(Path(__file__).parent))

from api import config
from api.enums import FamilyName, OrderMode, VerifyLevel
from api.errors import AraError, ParseError
from api.schemas.report import CertificateReport, PdReport, ResolutionDoc
from api.schemas.tls import PartitionDoc, TlsDoc
from api.services.certificate_pipeline import (
    Timer,
    family_generators,
    make_report,
    run_ara,
    run_family,
    run_pd,
    run_resolution,
    run_sv_check,
    run_verify,
)
from api.services.lyubeznik import build_complex, dense_matrix
from api.services.sv_verify import tls_to_partition
from api.utils.edge_list_parser import parse_edge_list
from api.utils.monomial_format import parse_monomials

logger = logging.getLogger("cli")

app = typer.Typer(help="Edge ideals of forests: pd, ara certificates, Lyubeznik resolutions.", no_args_is_help=True)
tls_app = typer.Typer(help="Tree-like systems.", no_args_is_help=True)
sv_app = typer.Typer(help="Schmitt-Vogel partitions.", no_args_is_help=True)
app.add_typer(tls_app, name="tls")
app.add_typer(sv_app, name="sv")

console = Console()
err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="DEBUG logging")):
    logging.basicConfig(
        level=logging.DEBUG if verbose else config.ARA_LOG_LEVEL,
        format="%(levelname)-8s %(name)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _run(body: Callable[[], int]) -> None:
    """Run a command body, mapping domain errors to exit code 2."""
    try:
        code = body()
    except AraError as e:
        err_console.print(f"[bold red]error[/bold red] ({e.code}): {e.message}", markup=True, highlight=False)
        raise typer.Exit(EXIT_INPUT)
    raise typer.Exit(code)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e}")


def _read_doc(path: str, model: type[BaseModel]):
    try:
        return model.model_validate_json(_read_text(path))
    except ValidationError as e:
        raise ParseError(f"{path} is not a valid {model.__name__}: {e.error_count()} problems")


def _parse_fields(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ParseError(f"--fields expects a comma-separated prime list, got {text!r}")


def _parse_levels(text: str) -> list[VerifyLevel]:
    try:
        return [VerifyLevel(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"--verify expects a subset of 'sv,oracle', got {text!r}")


def _family(name: str | None, args: list[int] | None) -> tuple[FamilyName, list[int]] | None:
    if name is None:
        if args:
            raise ParseError("Positional arguments are only accepted together with --family")
        return None
    try:
        family = FamilyName(name)
    except ValueError:
        raise ParseError(f"Unknown family {name!r}; expected one of {[f.value for f in FamilyName]}")
    return family, list(args or [])


def _emit(command: str, payload, results: dict, timer: Timer) -> None:
    typer.echo(make_report(command, payload, results, timer).model_dump_json(indent=2))


def _print_certificate(report: CertificateReport, trace: bool) -> None:
    console.print(f"[bold]tree-like system[/bold] (length {report.length}, pd {report.pd})")
    for k, line in enumerate(report.rendered):
        console.print(f"  q{k} = {line}", highlight=False)
    if report.strict_chains is not None:
        console.print(f"strict chains: {[len(c) for c in report.strict_chains]}")
    if trace and report.case_log:
        table = Table("step", "case", "data")
        for k, entry in enumerate(report.case_log):
            table.add_row(str(k), entry.tag, json.dumps(entry.data))
        console.print(table)
    _print_checks(report.model_dump())


def _print_checks(results: dict) -> None:
    console.print(f"tree-like: {'ok' if results.get('valid') else 'FAILED'}")
    sv = results.get("sv")
    if sv is not None:
        console.print(f"sv_check: {'ok' if sv['ok'] else 'FAILED (' + str(sv['condition']) + '): ' + str(sv['violation'])}")
    for doc in results.get("oracle") or []:
        verdict = "equal" if doc["equal"] else f"DIFFER at {doc['witness']}"
        console.print(f"F_{doc['p']}: {verdict} ({doc['points']} points)")
    console.print(f"verified: {results.get('verified')}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

@app.command()
def pd(
    input_path: str = typer.Option("-", "--input", "-i", help="Edge-list file, '-' for stdin"),
    bounds: bool = typer.Option(False, "--bounds", help="Also report mu, nu, rho and mu - rho + 1"),
    trace: bool = typer.Option(False, "--trace", help="Print the recursion trace"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Projective dimension of R/I(T)."""

    def body() -> int:
        text = _read_text(input_path)
        timer = Timer()
        forest = parse_edge_list(text)
        report: PdReport = run_pd(forest, with_bounds=bounds, timer=timer)
        if as_json:
            _emit("pd", {"input": text, "bounds": bounds}, report.model_dump(mode="json"), timer)
            return EXIT_OK
        console.print(f"pd = {report.pd}  (components: {report.components})")
        if report.invariants is not None:
            inv = report.invariants
            console.print(f"mu = {inv.mu}, nu = {inv.nu}, rho = {inv.rho}, mu - rho + 1 = {inv.upper_bound}")
            console.print(f"{report.pd} <= ara <= {inv.upper_bound}" + ("  (sharp)" if report.bound_collapsed else ""))
        if trace:
            table = Table("depth", "vertex", "n", "edges", "pd(T')", "pd(T'')", "value")
            for s in report.trace:
                table.add_row(*(str(x) for x in (s.depth, s.vertex, s.n, s.edges, s.pd_prime, s.pd_double_prime, s.value)))
            console.print(table)
        return EXIT_OK

    _run(body)


@app.command()
def ara(
    args: list[int] = typer.Argument(None, help="Family parameters when --family is given"),
    input_path: str | None = typer.Option(None, "--input", "-i", help="Edge-list file of a stretched forest"),
    family: str | None = typer.Option(None, "--family", help="star | line | double-star"),
    verify: str = typer.Option("sv", "--verify", help="Comma-separated: sv, oracle"),
    fields: str | None = typer.Option(None, "--fields", help="Primes for the oracle, default from ARA_DEFAULT_FIELDS"),
    cap: int | None = typer.Option(None, "--cap", help="Override the oracle variable cap"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the system as a TLS document"),
    trace: bool = typer.Option(False, "--trace", help="Print the builder's case log"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Build a tree-like system of length pd and verify it."""

    def body() -> int:
        fam = _family(family, args)
        if (fam is None) == (input_path is None):
            raise ParseError("Give exactly one of --input or --family")
        levels = _parse_levels(verify)
        primes = _parse_fields(fields)
        timer = Timer()
        if fam is not None:
            payload = {"family": fam[0].value, "args": fam[1]}
            report = run_ara(family=fam, levels=levels, fields=primes, cap=cap, timer=timer)
        else:
            text = _read_text(input_path)
            payload = {"input": text}
            report = run_ara(forest=parse_edge_list(text), levels=levels, fields=primes, cap=cap, timer=timer)
        payload.update(verify=[lv.value for lv in levels], fields=primes, cap=cap)

        if output is not None:
            output.write_text(report.tls.model_dump_json(indent=2), encoding="utf-8")
            logger.info(f"Wrote {output}")
        if as_json:
            _emit("ara", payload, report.model_dump(mode="json"), timer)
        else:
            _print_certificate(report, trace)
        return EXIT_OK if report.verified else EXIT_FAILED

    _run(body)


@tls_app.command("verify")
def tls_verify(
    input_path: str = typer.Option("-", "--input", "-i", help="TLS document"),
    verify: str = typer.Option("sv,oracle", "--verify"),
    fields: str | None = typer.Option(None, "--fields"),
    cap: int | None = typer.Option(None, "--cap"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Check a tree-like system document."""

    def body() -> int:
        doc: TlsDoc = _read_doc(input_path, TlsDoc)
        timer = Timer()
        results = run_verify(
            doc.to_system(), doc.labels or [], doc.target_monomials(),
            levels=_parse_levels(verify), fields=_parse_fields(fields), cap=cap, timer=timer,
        )
        if as_json:
            _emit("tls verify", doc, results, timer)
        else:
            console.print(f"length {results['length']}")
            _print_checks(results)
        return EXIT_OK if results["verified"] else EXIT_FAILED

    _run(body)


@sv_app.command("check")
def sv_check(
    input_path: str = typer.Option("-", "--input", "-i", help="Partition document or TLS document"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Check the Schmitt-Vogel conditions for a partition (a TLS document gives one block per element)."""

    def body() -> int:
        text = _read_text(input_path)
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"{input_path} is not JSON: {e}")
        try:
            if "blocks" in raw:
                partition = PartitionDoc.model_validate(raw)
            else:
                doc = TlsDoc.model_validate(raw)
                partition = PartitionDoc.from_partition(tls_to_partition(doc.to_system()))
                if doc.target is not None:
                    partition.target = doc.target
        except ValidationError as e:
            raise ParseError(f"{input_path} is neither a partition nor a TLS document: {e.error_count()} problems")
        timer = Timer()
        with timer.step("sv"):
            result = run_sv_check(partition)
        if as_json:
            _emit("sv check", raw, result.model_dump(), timer)
        else:
            console.print("ok" if result.ok else f"FAILED ({result.condition}): {result.violation}", highlight=False)
        return EXIT_OK if result.ok else EXIT_FAILED

    _run(body)


@app.command()
def oracle(
    input_path: str = typer.Option("-", "--input", "-i", help="TLS document"),
    fields: str | None = typer.Option(None, "--fields"),
    cap: int | None = typer.Option(None, "--cap"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Compare vanishing loci of a system and its target over small prime fields."""

    def body() -> int:
        doc: TlsDoc = _read_doc(input_path, TlsDoc)
        timer = Timer()
        results = run_verify(
            doc.to_system(), doc.labels or [], doc.target_monomials(),
            levels=[VerifyLevel.ORACLE], fields=_parse_fields(fields), cap=cap, timer=timer,
        )
        if as_json:
            _emit("oracle", doc, results, timer)
        else:
            for entry in results["oracle"]:
                verdict = "equal" if entry["equal"] else f"DIFFER at {entry['witness']}"
                console.print(f"F_{entry['p']}: {verdict} ({entry['points']} points)")
        ok = all(entry["equal"] and entry["inclusion_ok"] for entry in results["oracle"])
        return EXIT_OK if ok else EXIT_FAILED

    _run(body)


def _family_from_gens(spec: str) -> tuple[FamilyName, list[int]] | None:
    """Read 'double-star:2,3' or 'line 5' style family specs passed to --gens."""
    tokens = spec.replace(":", " ").replace(",", " ").split()
    if not tokens:
        return None
    try:
        return FamilyName(tokens[0]), [int(t) for t in tokens[1:]]
    except ValueError:
        return None


@app.command()
def resolution(
    args: list[int] = typer.Argument(None, help="Family parameters when --family is given"),
    gens: str | None = typer.Option(None, "--gens", help="Monomial file, or a family like 'double-star:2,3'"),
    family: str | None = typer.Option(None, "--family"),
    order: OrderMode = typer.Option(OrderMode.GIVEN, "--order"),
    matrices: bool = typer.Option(False, "--matrices", help="Include bases and differential matrices"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Lyubeznik resolution: Betti numbers, minimality and linearity."""

    def body() -> int:
        fam = _family(family, args)
        if (fam is None) == (gens is None):
            raise ParseError("Give exactly one of --gens or --family")
        payload: dict = {"order": order.value, "matrices": matrices}
        if fam is None and not Path(gens).exists():
            fam = _family_from_gens(gens)
            if fam is None:
                raise ParseError(f"{gens} is neither a readable file nor a family spec")
        if fam is not None:
            generators, labels = family_generators(*fam)
            payload.update(family=fam[0].value, args=fam[1])
        else:
            text = _read_text(gens)
            generators, labels = parse_monomials(text)
            payload.update(input=text)

        timer = Timer()
        doc: ResolutionDoc = run_resolution(generators, labels, order=order, with_matrices=matrices, timer=timer)
        if as_json:
            _emit("resolution", payload, doc.model_dump(mode="json"), timer)
            return EXIT_OK if doc.complex_ok else EXIT_FAILED

        console.print(f"generators: {', '.join(doc.generators)}", highlight=False)
        table = Table("t", "rank L^t")
        for t, rank in enumerate(doc.ranks, start=1):
            table.add_row(str(t), str(rank))
        console.print(table)
        console.print(f"minimal: {doc.minimal}   linear: {doc.linear}   d*d = 0: {doc.complex_ok}")
        if doc.betti is not None:
            console.print(f"Betti numbers: {tuple(doc.betti)}")
        if matrices:
            c = build_complex(generators, order)
            for t in range(1, c.max_dim + 1):
                grid = Table(title=f"d_{t}", show_header=False)
                for row in dense_matrix(c, t):
                    grid.add_row(*("0" if cell is None else ("-" if cell[0] < 0 else "") + cell[1].render(labels) for cell in row))
                console.print(grid)
        return EXIT_OK if doc.complex_ok else EXIT_FAILED

    _run(body)


@app.command("family")
def family_cmd(
    name: FamilyName = typer.Argument(..., help="star | line | double-star"),
    args: list[int] = typer.Argument(..., help="r for star/line, r s for double-star"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Forest, pd, mu, rho, the bound and the closed-form certificate of a named family."""

    def body() -> int:
        timer = Timer()
        with timer.step("family"):
            report = run_family(name, list(args))
        if as_json:
            _emit("family", {"name": name.value, "args": list(args)}, report.model_dump(mode="json"), timer)
            return EXIT_OK
        console.print(f"[bold]{report.name}[/bold] {' '.join(map(str, report.args))}")
        console.print("edges: " + ", ".join(f"{report.forest.labels[u]}{report.forest.labels[v]}" for u, v in report.forest.edges), highlight=False)
        console.print(f"pd = {report.pd}, mu = {report.mu}, rho = {report.rho}, mu - rho + 1 = {report.upper_bound}")
        console.print(f"bound sharp: {report.sharp}")
        for k, line in enumerate(report.certificate):
            console.print(f"  q{k} = {line}", highlight=False)
        return EXIT_OK

    _run(body)


if __name__ == "__main__":
    app()
