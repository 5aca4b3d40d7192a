import csv
import json
import math

import pytest
import yaml

from cycleturan import sweep as sweep_mod
from cycleturan.errors import ValidationError
from cycleturan.sweep import (
    ExperimentRecord,
    SweepConfig,
    cell_seed,
    cells,
    curve,
    read_records,
    run_cell,
    sweep,
)


def cfg(**kw):
    base = dict(r=3, ell=2, n_list=[8], x_list=[2.3], reps=1, seeds=0)
    base.update(kw)
    return SweepConfig(**base)


class TestConfig:
    @pytest.mark.parametrize(
        "kw",
        [
            {"n_list": []},
            {"x_list": []},
            {"reps": 0},
            {"x_list": [3.5]},
            {"x_list": [0.0]},
            {"estimator": "oracle"},
            {"family": "tight"},
            {"n_list": [2]},
        ],
    )
    def test_rejects(self, kw):
        with pytest.raises(ValidationError):
            cfg(**kw)

    def test_unknown_key(self):
        with pytest.raises(ValidationError):
            SweepConfig.from_dict({"r": 3, "ell": 2, "n_list": [8], "x_list": [2.0], "bogus": 1})

    def test_yaml(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text(yaml.safe_dump({"r": 3, "ell": 2, "n_list": [8], "x_list": [2.0], "reps": 2}))
        c = SweepConfig.load(path)
        assert c.reps == 2 and c.budgets["nodes"] > 0

    def test_non_mapping(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValidationError):
            SweepConfig.load(path)

    def test_cell_order(self):
        c = cfg(n_list=[9, 8], x_list=[2.5, 2.1], reps=2)
        assert cells(c)[:3] == [(8, 2.1, 0), (8, 2.5, 0), (8, 2.1, 1)]

    def test_seed_independent_of_grid(self):
        assert cell_seed(3, 1) == cell_seed(3, 1) != cell_seed(3, 2)


class TestRecord:
    def test_sandwich_enforced(self):
        with pytest.raises(ValidationError):
            ExperimentRecord(3, 2, 8, 0.5, 2.5, 0, "exact", 5, 4, 10)

    def test_round_trip(self):
        rec = ExperimentRecord(3, 2, 8, 0.5, 2.5, 0, "exact", 4, 4, 10, notes=["a"])
        assert ExperimentRecord.from_json(json.loads(json.dumps(rec.to_json()))) == rec


class TestCells:
    def test_exact_single_cell(self):
        rec, witness = run_cell(cfg(n_list=[7], estimator="exact"), 7, 2.3, 0)
        assert rec.estimator == "exact" and rec.ex_lower == rec.ex_upper
        assert len(witness) == rec.ex_lower

    def test_full_density_star(self):
        n = 9
        rec, _ = run_cell(cfg(n_list=[n], x_list=[3.0], estimator="lower"), n, 3.0, 0)
        assert rec.edges == math.comb(n, 3)
        assert rec.raw_sources["star"] == math.comb(n - 1, 2)
        assert rec.ex_lower >= math.comb(n - 1, 2)

    def test_sparse_deletion_keeps_most(self):
        n, x = 14, 1.2
        for rep in range(5):
            rec, _ = run_cell(cfg(n_list=[n], x_list=[x], reps=5), n, x, rep)
            assert rec.raw_sources["deletion"] >= 0.8 * rec.edges

    def test_lower_only(self):
        rec, _ = run_cell(cfg(estimator="lower"), 8, 2.3, 0)
        assert rec.estimator == "lower" and rec.ex_upper == rec.edges


class TestSweep:
    def test_monotone_in_x_per_host(self):
        c = cfg(n_list=[10], x_list=[2.0, 2.2, 2.4, 2.6, 2.8], reps=2)
        recs = sweep(c)
        for rep in range(2):
            seq = [r.ex_lower for r in sorted(recs, key=lambda r: r.x) if r.seed == cell_seed(0, rep)]
            assert seq == sorted(seq)

    def test_files_and_resume(self, tmp_path):
        c = cfg(n_list=[8, 9], x_list=[2.2, 2.6], output_dir=str(tmp_path))
        first = sweep(c)
        data = (tmp_path / "records.jsonl").read_bytes()
        assert [r.key for r in first] == sorted(r.key for r in first)
        again = sweep(c)
        assert again == first
        assert (tmp_path / "records.jsonl").read_bytes() == data
        sweep(c, resume=False)
        assert (tmp_path / "records.jsonl").read_bytes() == data
        assert read_records(tmp_path / "records.jsonl") == first
        with open(tmp_path / "records.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4 and rows[0]["estimator"]

    def test_failed_cells_recorded(self, monkeypatch):
        def boom(*a, **k):
            raise ValidationError("broken host")

        monkeypatch.setattr(sweep_mod, "gen_gnrp", boom)
        recs = sweep(cfg(x_list=[2.2, 2.4]))
        assert [r.estimator for r in recs] == ["failed", "failed"]
        assert "broken host" in recs[0].notes[0]

    def test_curve_means(self):
        recs = [
            ExperimentRecord(3, 2, 10, 0.1, 2.0, s, "lower", v, 50, 50)
            for s, v in ((0, 10), (1, 30))
        ]
        assert curve(recs) == {10: [(2.0, pytest.approx(math.log(20) / math.log(10)))]}
