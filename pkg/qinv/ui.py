"""
User interface helpers (display) for the CLI.

This module provides:
- Table display functions for categories, center simples and modular data
- Ledger and comparison tables for the invariants
"""

from __future__ import annotations

from typing import Iterable

from rich.console import Console
from rich.table import Table

from qinv.algebra.matrix import Mat
from qinv.center.modular import ModularData
from qinv.center.simples import CenterSimples
from qinv.fusion.morphism import obj_text
from qinv.fusion.spec import CategorySpec
from qinv.graphs.files import NetValue
from qinv.services.dims import DimsResult
from qinv.services.identities import Comparison
from qinv.services.state_sum import StateSumResult
from qinv.services.surgery import SurgeryResult

console = Console()


# ============================================================
# CATEGORIES AND CENTER
# ============================================================


def print_categories_table(specs: Iterable[CategorySpec]) -> None:
    table = Table(title="Catégories", expand=True)

    table.add_column("Nom", overflow="fold")
    table.add_column("Groupe", overflow="fold")
    table.add_column("Simples", overflow="fold")
    table.add_column("Conducteur", justify="right")
    table.add_column("Description", overflow="fold")

    for spec in specs:
        table.add_row(
            spec.name,
            " ".join(spec.group.elements),
            " ".join(spec.simples),
            str(spec.conductor),
            spec.description or "",
        )

    console.print(table)


def print_center_table(simples: CenterSimples) -> None:
    """
    Display the simples of the center, degree by degree.
    """
    center = simples.center
    table = Table(title=f"Centre de {simples.cat.name}", expand=True)

    table.add_column("Simple", overflow="fold")
    table.add_column("Degré", justify="center")
    table.add_column("Objet sous-jacent", overflow="fold")
    table.add_column("Dimension", justify="right")

    for j in simples.all():
        table.add_row(j.name, j.degree, obj_text(j.obj), str(center.dim(j)))

    console.print(table)


def print_matrix(title: str, labels: list[str], mat: Mat) -> None:
    table = Table(title=title, expand=True)
    table.add_column("")
    for label in labels:
        table.add_column(label, justify="right", overflow="fold")
    for i, label in enumerate(labels):
        table.add_row(label, *(str(mat[i, j]) for j in range(len(labels))))
    console.print(table)


def print_modular_data(data: ModularData) -> None:
    table = Table(title="Twists de Z_1", expand=True)

    table.add_column("Simple", overflow="fold")
    table.add_column("Dimension", justify="right")
    table.add_column("Twist", justify="right")

    for name, dim, nu in zip(data.labels, data.dims, data.twists):
        table.add_row(name, str(dim), str(nu))

    console.print(table)
    print_matrix("Matrice S", data.labels, data.s)
    console.print(f"Delta+ = {data.delta_plus}, Delta- = {data.delta_minus}")


# ============================================================
# INVARIANTS
# ============================================================


def print_state_sum_ledger(result: StateSumResult) -> None:
    table = Table(title=f"Coloriages de {result.scene}", expand=True)

    table.add_column("#", justify="right")
    table.add_column("Coloriage", overflow="fold")
    table.add_column("dim(c)", justify="right")
    table.add_column("|c|", justify="right")

    for n, t in enumerate(result.terms):
        colors = ", ".join(f"{r}={a}" for r, a in t.coloring.items())
        table.add_row(str(n), colors, str(t.dim), str(t.value))

    console.print(table)


def print_surgery_ledger(result: SurgeryResult) -> None:
    table = Table(title=f"Coloriages de l'entrelacs {result.scene}", expand=True)

    table.add_column("#", justify="right")
    table.add_column("lambda", overflow="fold")
    table.add_column("Poids", justify="right")
    table.add_column("F", justify="right")

    for n, t in enumerate(result.terms):
        colors = ", ".join(f"{p}={name}" for p, name in t.colors.items())
        table.add_row(str(n), colors or "-", str(t.weight), str(t.value))

    console.print(table)


def print_comparison(comparison: Comparison) -> None:
    table = Table(title=f"Présentations de {comparison.name}", expand=True)

    table.add_column("Méthode", overflow="fold")
    table.add_column("Scène", overflow="fold")
    table.add_column("Valeur", justify="right", overflow="fold")

    for kind, scene, value in comparison.values:
        table.add_row(kind, scene, str(value))

    console.print(table)


def print_dims(result: DimsResult) -> None:
    table = Table(title=f"Espace d'états de {result.surface}", expand=True)

    table.add_column("Méthode", overflow="fold")
    table.add_column("Dimension", justify="right")

    table.add_row("somme d'états", str(result.statesum))
    table.add_row("chirurgie", str(result.surgery))
    if result.verlinde is not None:
        table.add_row("Verlinde", result.verlinde)

    console.print(table)


def print_net_values(name: str, values: list[NetValue]) -> None:
    table = Table(title=f"Réseau {name}", expand=True)

    table.add_column("Vecteurs", overflow="fold")
    table.add_column("Valeur", justify="right", overflow="fold")

    for v in values:
        choice = ", ".join(f"{k}={i}" for k, i in v.choice.items()) or "-"
        table.add_row(choice, v.value)

    console.print(table)


def print_manifolds_table(rows: Iterable[tuple[str, str, list[str], list[str]]]) -> None:
    table = Table(title="Variétés fournies", expand=True)

    table.add_column("Variété", overflow="fold")
    table.add_column("Structure", justify="center")
    table.add_column("Squelettes", overflow="fold")
    table.add_column("Chirurgies", overflow="fold")

    for manifold, g, plexus, surgery in rows:
        table.add_row(manifold, g, ", ".join(plexus), ", ".join(surgery))

    console.print(table)

