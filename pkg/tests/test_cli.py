import json

from typer.testing import CliRunner

from qinv.cli import app
from qinv.exceptions import EXIT_IDENTITY, EXIT_PARSE, EXIT_VALIDATION
from qinv.fusion.spec import save_category
from qinv.manifolds.library import s1s2_circle, s3_sphere, surgeries
from qinv.manifolds.scene import save_scene
from qinv.seeds import mutations

runner = CliRunner()


def test_validate_bundled():
    result = runner.invoke(app, ["validate", "toric"])
    assert result.exit_code == 0
    assert "pentagon" in result.stdout


def test_validate_unknown_name():
    result = runner.invoke(app, ["validate", "nope"])
    assert result.exit_code == EXIT_PARSE
    assert "FORMAT_ERROR" in result.stdout


def test_validate_mutation(tmp_path):
    path = save_category(mutations()["pentagon"], tmp_path / "bad.cat")
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == EXIT_VALIDATION
    assert "PENTAGON_ERROR" in result.stdout


def test_list_categories():
    result = runner.invoke(app, ["list-categories"])
    assert result.exit_code == 0
    assert "fibonacci" in result.stdout


def test_seed(tmp_path):
    result = runner.invoke(app, ["seed", "--data-dir", str(tmp_path)])
    assert result.exit_code == 0
    assert (tmp_path / "cats" / "toric.cat").exists()
    assert (tmp_path / "mutations" / "spherical.cat").exists()


def test_center_export(tmp_path):
    target = tmp_path / "toric.center.json"
    result = runner.invoke(app, ["center", "--cat", "toric", "--export-center", str(target)])
    assert result.exit_code == 0
    assert len(json.loads(target.read_text(encoding="utf-8"))["simples"]) == 4

    again = runner.invoke(app, ["modular-data", "--cat", "toric", "--center", str(target)])
    assert again.exit_code == 0
    assert "Matrice S" in again.stdout


def test_export_into_missing_directory(tmp_path):
    result = runner.invoke(app, ["center", "--cat", "toric", "--export-center", str(tmp_path / "no" / "c.json")])
    assert result.exit_code == EXIT_PARSE
    assert "BAD_OPTIONS" in result.stdout


def test_net_eval():
    result = runner.invoke(app, ["net-eval", "hopf", "--cat", "toric", "--color", "Je_0", "--color", "Je_3"])
    assert result.exit_code == 0
    assert result.stdout.strip().endswith("(mod 1)")

    bad = runner.invoke(app, ["net-eval", "hopf", "--cat", "toric", "--color", "Je_0"])
    assert bad.exit_code == EXIT_PARSE


def test_net_eval_from_files(tmp_path):
    hopf = tmp_path / "hopf.net"
    crossings = [
        {"name": "f", "over": "Je_0", "under": "Je_3", "edges": ["ea2", "eb2", "eb1", "ea1"]},
        {"name": "g", "over": "Je_3", "under": "Je_0", "edges": ["eb1", "ea1", "ea2", "eb2"]},
    ]
    hopf.write_text(json.dumps({"kind": "net", "name": "hopf", "crossings": crossings}), encoding="utf-8")
    from_file = runner.invoke(app, ["net-eval", str(hopf), "--cat", "toric"])
    built_in = runner.invoke(app, ["net-eval", "hopf", "--cat", "toric", "--color", "Je_0", "--color", "Je_3"])
    assert from_file.exit_code == 0
    assert from_file.stdout.strip().splitlines()[-1] == built_in.stdout.strip().splitlines()[-1]

    strip = tmp_path / "loop.net"
    strip.write_text(json.dumps({"kind": "strip", "bottom": ["Je_0"], "tiles": [{"tile": "twist", "at": 0}]}))
    result = runner.invoke(app, ["net-eval", str(strip), "--cat", "toric"])
    assert result.exit_code == 0
    assert result.stdout.strip().splitlines()[-1] == "1 (mod 1)"

    bad = tmp_path / "bad.net"
    bad.write_text(json.dumps({"kind": "strip", "bottom": []}))
    assert runner.invoke(app, ["net-eval", str(bad), "--cat", "toric"]).exit_code == EXIT_PARSE


def test_state_sum_and_ledger(toric, tmp_path):
    scene = save_scene(s3_sphere(toric.group), tmp_path / "s3.scene")
    ledger = tmp_path / "ledger.json"
    result = runner.invoke(
        app, ["invariant", "state-sum", str(scene), "--cat", "toric", "--ledger", "--ledger-file", str(ledger)]
    )
    assert result.exit_code == 0
    assert result.stdout.strip().splitlines()[-1] == "1/2 (mod 1)"
    assert len(json.loads(ledger.read_text(encoding="utf-8"))["terms"]) == 2


def test_surgery_on_a_skeleton_file(toric, tmp_path):
    scene = save_scene(s3_sphere(toric.group), tmp_path / "s3.scene")
    result = runner.invoke(app, ["invariant", "surgery", str(scene), "--cat", "toric"])
    assert result.exit_code == EXIT_PARSE


def test_missing_scene_file(tmp_path):
    result = runner.invoke(app, ["invariant", "state-sum", str(tmp_path / "none.scene"), "--cat", "toric"])
    assert result.exit_code == EXIT_PARSE


def test_bad_worker_count(toric, tmp_path):
    scene = save_scene(s3_sphere(toric.group), tmp_path / "s3.scene")
    result = runner.invoke(app, ["invariant", "state-sum", str(scene), "--cat", "toric", "--workers", "0"])
    assert result.exit_code == EXIT_PARSE


def test_invalid_scene(z3, tmp_path):
    scene = s1s2_circle(z3.group, "1")
    scene.regions[1].label = "2"
    path = save_scene(scene, tmp_path / "bad.scene")
    result = runner.invoke(app, ["invariant", "state-sum", str(path), "--cat", "vec_z3"])
    assert result.exit_code == EXIT_VALIDATION
    assert "SCENE_INVALID" in result.stdout


def test_surgery(toric, tmp_path):
    scene = save_scene(surgeries("s1s2", toric.group, "e")[0], tmp_path / "s1s2.scene")
    result = runner.invoke(app, ["invariant", "surgery", str(scene), "--cat", "toric", "--workers", "2"])
    assert result.exit_code == 0
    assert result.stdout.strip().splitlines()[-1] == "1 (mod 1)"


def test_dims(tmp_path):
    surface = tmp_path / "torus.json"
    surface.write_text(json.dumps({"name": "tore", "genus": 1, "alphas": ["e"], "betas": ["e"]}), encoding="utf-8")
    result = runner.invoke(app, ["dims", str(surface), "--cat", "toric"])
    assert result.exit_code == 0
    assert result.stdout.strip().splitlines()[-1] == "4"


def test_compare(toric, tmp_path):
    runner.invoke(app, ["seed", "--data-dir", str(tmp_path)])
    manifest = tmp_path / "scenes" / "ge" / "s1s2_0.cmp"
    result = runner.invoke(app, ["compare", str(manifest), "--cat", "toric"])
    assert result.exit_code == 0
    assert "EQUAL" in result.stdout


def test_compare_mismatch(toric, tmp_path):
    save_scene(s3_sphere(toric.group), tmp_path / "a.scene")
    save_scene(surgeries("s1s2", toric.group, "e")[0], tmp_path / "b.scene")
    manifest = {"name": "bad", "manifold": "s3", "structure": "e", "plexus": ["a.scene"], "surgery": ["b.scene"]}
    (tmp_path / "bad.cmp").write_text(json.dumps(manifest), encoding="utf-8")
    result = runner.invoke(app, ["compare", str(tmp_path / "bad.cmp"), "--cat", "toric"])
    assert result.exit_code == EXIT_IDENTITY
    assert "IDENTITY_FAILED" in result.stdout


def test_list_manifolds():
    result = runner.invoke(app, ["list-manifolds", "--cat", "vec_z3"])
    assert result.exit_code == 0
    assert "L(3,1)" in result.stdout


def test_check_commands():
    identities = runner.invoke(app, ["check", "identities", "--cat", "toric", "--manifold", "s3"])
    assert identities.exit_code == 0
    assert "presentations: 1 structures" in identities.stdout

    center = runner.invoke(app, ["check", "center", "--cat", "toric"])
    assert center.exit_code == 0
    assert "dimensions" in center.stdout

    crossing = runner.invoke(app, ["check", "crossing", "--cat", "vec_z3_omega"])
    assert crossing.exit_code == 0
    assert "associativity" in crossing.stdout
