"""
qinv - Command Line Interface.

This module provides the main CLI using Typer, with:
- Category validation and center construction commands
- Net evaluation, state sums and surgery invariants
- Manifest comparison and identity checks
- Proper error handling with distinct exit codes
"""

from pathlib import Path
from typing import Callable, List, Optional

import sentry_sdk
import typer
from pydantic import ValidationError
from rich.markup import escape

from qinv import seeds
from qinv.center.braiding import check_braiding
from qinv.center.crossing import check_crossing
from qinv.center.simples import check_simples
from qinv.config import RunConfig, settings
from qinv.exceptions import ParseError, QinvException, SpecFormatError, exit_code_for, format_exception_for_cli
from qinv.graphs.files import StripFile, evaluate_net_file, evaluate_strip_file, load_net_file
from qinv.graphs.net import Leg, evaluate_net, hopf_net, pairing_matrix
from qinv.manifolds.library import TITLES, matched_scenes
from qinv.manifolds.scene import PlexusScene, SurgeryScene, load_scene
from qinv.sentry_init import init_sentry
from qinv.services import (
    compare_manifest,
    load_engine,
    load_surface,
    run_identities,
    save_ledger,
    state_space_dims,
    state_sum,
    surgery_invariant,
)
from qinv.services.engine import Engine
from qinv.ui import (
    console,
    print_categories_table,
    print_center_table,
    print_comparison,
    print_dims,
    print_manifolds_table,
    print_modular_data,
    print_net_values,
    print_state_sum_ledger,
    print_surgery_ledger,
)

# Root Typer app for the whole command line interface.
app = typer.Typer(help="qinv - invariants exacts des 3-variétés avec G-structure")

# Sub-apps to group commands by domain.
invariant_app = typer.Typer(help="Calcul des invariants")
check_app = typer.Typer(help="Vérifications de cohérence")

app.add_typer(invariant_app, name="invariant")
app.add_typer(check_app, name="check")

CAT_OPTION = typer.Option(..., "--cat", help="Catégorie fournie (nom) ou fichier .cat")
CENTER_OPTION = typer.Option(None, "--center", help="Centre exporté à relire au lieu de le reconstruire")
WORKERS_OPTION = typer.Option(None, "--workers", help="Nombre de fils de calcul")
LEDGER_OPTION = typer.Option(False, "--ledger", help="Afficher chaque terme de la somme")
LEDGER_FILE_OPTION = typer.Option(None, "--ledger-file", help="Écrire les termes en JSON")


# =============================================================================
# ERROR HANDLING UTILITIES
# =============================================================================


def _handle_error(exc: Exception) -> int:
    """
    Display a user-friendly message and return the exit code.

    Args:
        exc: The exception to handle.
    """
    if isinstance(exc, QinvException):
        console.print(f"[red]Erreur:[/red] {escape(format_exception_for_cli(exc))}")
    elif isinstance(exc, KeyError):
        console.print(f"[red]Erreur:[/red] {escape(str(exc.args[0] if exc.args else exc))}")
    else:
        # Unexpected error - log to Sentry
        sentry_sdk.capture_exception(exc)
        console.print(f"[red]Erreur inattendue:[/red] {type(exc).__name__}: {escape(str(exc))}")
    return exit_code_for(exc)


def _run(func: Callable[[], None]) -> None:
    """Call a command body and turn errors into exit codes."""
    init_sentry()
    try:
        func()
    except typer.Exit:
        raise
    except Exception as exc:
        raise typer.Exit(_handle_error(exc))


def _config(
    workers: Optional[int] = None,
    ledger: bool = False,
    inputs: Optional[list[Path]] = None,
    export_center: Optional[Path] = None,
) -> RunConfig:
    """
    Validate the flags of a run.

    Raises:
        ParseError: invalid flag values or missing input files.
    """
    values = {"ledger": ledger or settings.QINV_LEDGER, "inputs": inputs or []}
    if workers is not None:
        values["workers"] = workers
    if export_center is not None:
        values["export_center"] = export_center
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        raise ParseError(f"Options invalides : {exc}", code="BAD_OPTIONS")


def _engine(cat: str, config: RunConfig, center: Optional[Path] = None) -> Engine:
    return load_engine(cat, config, center)


# =============================================================================
# CATEGORY COMMANDS
# =============================================================================


@app.command("validate")
def validate_cmd(cat: str = typer.Argument(..., help="Nom fourni ou fichier .cat")):
    """Vérifier les axiomes d'une catégorie."""

    def body() -> None:
        engine = _engine(cat, _config())
        console.print(engine.report.summary())

    _run(body)


@app.command("list-categories")
def list_categories_cmd():
    """Lister les catégories fournies."""
    _run(lambda: print_categories_table(build() for build in seeds.BUNDLED_CATEGORIES.values()))


@app.command("seed")
def seed_cmd(data_dir: Optional[Path] = typer.Option(None, "--data-dir", help="Dossier de sortie")):
    """Écrire les catégories, scènes et manifestes fournis."""

    def body() -> None:
        target = data_dir or Path(settings.QINV_DATA_DIR)
        written = seeds.write_seed_files(target)
        console.print(f"[green]✓ {len(written)} fichiers écrits dans {target}[/green]")

    _run(body)


@app.command("center")
def center_cmd(
    cat: str = CAT_OPTION,
    export_center: Optional[Path] = typer.Option(None, "--export-center", help="Fichier JSON du centre"),
):
    """Construire le G-centre et afficher ses simples."""

    def body() -> None:
        config = _config(export_center=export_center)
        engine = _engine(cat, config)
        print_center_table(engine.simples)
        if config.export_center is not None:
            path = engine.export_center(config.export_center)
            console.print(f"[green]✓ Centre exporté dans {path}[/green]")

    _run(body)


@app.command("modular-data")
def modular_data_cmd(cat: str = CAT_OPTION, center: Optional[Path] = CENTER_OPTION):
    """Afficher la matrice S, les twists et Delta de Z_1."""

    def body() -> None:
        engine = _engine(cat, _config(inputs=[center] if center else None), center)
        print_modular_data(engine.modular)

    _run(body)


@app.command("net-eval")
def net_eval_cmd(
    kind: str = typer.Argument(..., help="hopf, theta ou fichier .net (réseau ou bande)"),
    cat: str = CAT_OPTION,
    color: Optional[List[str]] = typer.Option(None, "--color", help="Couleur d'un brin (répéter)"),
    center: Optional[Path] = CENTER_OPTION,
):
    """Évaluer un réseau : Hopf, theta, ou un réseau ou diagramme de bande décrit dans un fichier."""

    def body() -> None:
        colors = color or []
        if kind not in ("hopf", "theta"):
            source = load_net_file(kind)
            engine = _engine(cat, _config(inputs=[Path(kind)] + ([center] if center else [])), center)
            if isinstance(source, StripFile):
                console.print(str(evaluate_strip_file(engine.evaluator, source)))
                return
            values = evaluate_net_file(engine.braiding, source)
            if len(values) > 1:
                print_net_values(source.name, values)
            console.print(values[-1].value if len(values) == 1 else f"{len(values)} valeurs")
            return
        engine = _engine(cat, _config(inputs=[center] if center else None), center)
        if kind == "hopf":
            if len(colors) != 2:
                raise SpecFormatError("Le réseau de Hopf attend deux couleurs --color.")
            a, b = (engine.simple(c) for c in colors)
            console.print(str(evaluate_net(engine.cat, hopf_net(engine.braiding, a, b), {})))
        else:
            if not colors:
                raise SpecFormatError("Le réseau theta attend au moins une couleur --color.")
            for c in colors:
                if c not in engine.cat.simples:
                    raise SpecFormatError(f"Simple inconnu : {c}")
            legs = [Leg(f"e{k}", ((c,),), 1) for k, c in enumerate(colors)]
            for row in pairing_matrix(engine.cat, legs):
                console.print(" ".join(str(x) for x in row))

    _run(body)


# =============================================================================
# INVARIANTS COMMANDS
# =============================================================================


@invariant_app.command("state-sum")
def state_sum_cmd(
    scene: Path = typer.Argument(..., help="Fichier .scene d'un squelette"),
    cat: str = CAT_OPTION,
    workers: Optional[int] = WORKERS_OPTION,
    ledger: bool = LEDGER_OPTION,
    ledger_file: Optional[Path] = LEDGER_FILE_OPTION,
    center: Optional[Path] = CENTER_OPTION,
):
    """Somme d'états d'un squelette avec plexus."""

    def body() -> None:
        config = _config(workers, ledger or ledger_file is not None, [scene] + ([center] if center else []))
        loaded = load_scene(scene)
        if not isinstance(loaded, PlexusScene):
            raise SpecFormatError(f"{scene} n'est pas un squelette.")
        result = state_sum(_engine(cat, config, center), loaded)
        if ledger:
            print_state_sum_ledger(result)
        if ledger_file is not None:
            save_ledger(result, ledger_file)
        console.print(str(result.value))

    _run(body)


@invariant_app.command("surgery")
def surgery_cmd(
    scene: Path = typer.Argument(..., help="Fichier .scene d'un diagramme de chirurgie"),
    cat: str = CAT_OPTION,
    workers: Optional[int] = WORKERS_OPTION,
    ledger: bool = LEDGER_OPTION,
    ledger_file: Optional[Path] = LEDGER_FILE_OPTION,
    center: Optional[Path] = CENTER_OPTION,
):
    """Invariant de chirurgie d'un entrelacs encadré."""

    def body() -> None:
        config = _config(workers, ledger or ledger_file is not None, [scene] + ([center] if center else []))
        loaded = load_scene(scene)
        if not isinstance(loaded, SurgeryScene):
            raise SpecFormatError(f"{scene} n'est pas un diagramme de chirurgie.")
        result = surgery_invariant(_engine(cat, config, center), loaded)
        if ledger:
            print_surgery_ledger(result)
        if ledger_file is not None:
            save_ledger(result, ledger_file)
        console.print(str(result.value))

    _run(body)


@app.command("dims")
def dims_cmd(
    surface: Path = typer.Argument(..., help="Fichier JSON de la surface"),
    cat: str = CAT_OPTION,
    center: Optional[Path] = CENTER_OPTION,
):
    """Dimension de l'espace d'états d'une surface, calculée des deux façons."""

    def body() -> None:
        config = _config(inputs=[surface] + ([center] if center else []))
        result = state_space_dims(_engine(cat, config, center), load_surface(surface))
        print_dims(result)
        console.print(str(result.surgery))

    _run(body)


@app.command("compare")
def compare_cmd(
    manifest: Path = typer.Argument(..., help="Manifeste .cmp"),
    cat: str = CAT_OPTION,
    workers: Optional[int] = WORKERS_OPTION,
    center: Optional[Path] = CENTER_OPTION,
):
    """Comparer toutes les présentations d'un manifeste."""

    def body() -> None:
        config = _config(workers, inputs=[manifest] + ([center] if center else []))
        comparison = compare_manifest(_engine(cat, config, center), manifest)
        print_comparison(comparison)
        console.print("EQUAL")

    _run(body)


@app.command("list-manifolds")
def list_manifolds_cmd(cat: str = CAT_OPTION):
    """Lister les variétés fournies et leurs présentations pour le groupe d'une catégorie."""

    def body() -> None:
        engine = _engine(cat, _config())
        rows = [
            (TITLES[m], g, [s.name for s in plexus], [s.name for s in surgery])
            for m, g, plexus, surgery in matched_scenes(engine.group)
        ]
        print_manifolds_table(rows)

    _run(body)


# =============================================================================
# CHECK COMMANDS
# =============================================================================


@check_app.command("identities")
def check_identities_cmd(
    cat: str = CAT_OPTION,
    manifold: Optional[List[str]] = typer.Option(None, "--manifold", help="Restreindre aux variétés données"),
    center: Optional[Path] = CENTER_OPTION,
):
    """Vérifier les identités entre somme d'états et chirurgie."""

    def body() -> None:
        engine = _engine(cat, _config(inputs=[center] if center else None), center)
        report = run_identities(engine, manifold or None)
        for line in report.checked:
            console.print(line)
        console.print("[green]✓ Identités vérifiées[/green]")

    _run(body)


@check_app.command("center")
def check_center_cmd(cat: str = CAT_OPTION):
    """Vérifier les simples du centre."""

    def body() -> None:
        engine = _engine(cat, _config())
        console.print(", ".join(f"{name}: ok" for name in check_simples(engine.simples)))

    _run(body)


@check_app.command("crossing")
def check_crossing_cmd(cat: str = CAT_OPTION):
    """Vérifier le croisement et la G-tresse."""

    def body() -> None:
        engine = _engine(cat, _config())
        passed = check_crossing(engine.crossing) + check_braiding(engine.braiding)
        console.print(", ".join(f"{name}: ok" for name in passed))

    _run(body)


def main():
    """Entry point for: python -m qinv.cli"""
    app()


if __name__ == "__main__":
    main()
