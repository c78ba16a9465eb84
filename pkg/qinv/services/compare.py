"""
Comparison of the scenes listed in a manifest, and ledger files.

Business rules:
- Scene paths in a manifest are relative to the manifest's directory.
- Every listed scene is evaluated (state sum for skeletons, surgery
  invariant for diagrams); the manifest holds when all values are equal.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

import sentry_sdk

from qinv.exceptions import IdentityFailure, SceneValidationError
from qinv.manifolds.library import load_manifest
from qinv.manifolds.scene import PlexusScene, SurgeryScene, load_scene
from qinv.services.engine import Engine
from qinv.services.identities import Comparison, compare_presentations


def compare_manifest(engine: Engine, path: Union[str, Path], workers: Optional[int] = None) -> Comparison:
    """Evaluate every scene of a manifest.

    Raises:
        IdentityFailure: two values differ.
    """
    path = Path(path)
    manifest = load_manifest(path)
    plexus, surgery = [], []
    for name in manifest.plexus:
        scene = load_scene(path.parent / name)
        if not isinstance(scene, PlexusScene):
            raise SceneValidationError(f"{name} n'est pas un squelette.", manifest.name)
        plexus.append(scene)
    for name in manifest.surgery:
        scene = load_scene(path.parent / name)
        if not isinstance(scene, SurgeryScene):
            raise SceneValidationError(f"{name} n'est pas un diagramme de chirurgie.", manifest.name)
        surgery.append(scene)
    comparison = compare_presentations(engine, manifest.name, plexus, surgery, workers)
    if not comparison.equal:
        sentry_sdk.capture_message(f"Manifest {manifest.name} not equal", level="warning")
        lines = [f"{kind} {scene}: {value}" for kind, scene, value in comparison.values]
        raise IdentityFailure(manifest.name, str(comparison.values[0][2]), str(comparison.values[-1][2]), lines)
    sentry_sdk.capture_message(f"Manifest {manifest.name}: equal", level="info")
    return comparison


def save_ledger(result: Any, path: Union[str, Path]) -> Path:
    """Write a state-sum or surgery result with its terms as JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(result.to_dict(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return path
