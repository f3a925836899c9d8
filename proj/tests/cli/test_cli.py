"""End-to-end checks of the permabound executable: outputs validate against the
shipped JSON schemas, key numbers match closed forms, exit codes follow the
violation count, and output bytes do not depend on the thread count."""

import json
import math
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BIN = os.environ["PERMABOUND_BIN"]
SCHEMAS = Path(os.environ["PERMABOUND_SCHEMAS"])


def run(*args, env=None, check_exit=0):
    full_env = dict(os.environ)
    full_env.pop("PERMABOUND_THREADS", None)
    full_env.update(env or {})
    proc = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env)
    if check_exit is not None and proc.returncode != check_exit:
        raise AssertionError(f"{args}: exit {proc.returncode}, stderr: {proc.stderr}")
    return proc


def run_json(command, *args, **kw):
    doc = json.loads(run(command, *args, **kw).stdout)
    schema = json.loads((SCHEMAS / f"{command}.schema.json").read_text())
    jsonschema.validate(doc, schema)
    return doc


def write_csv(rows):
    fd, path = tempfile.mkstemp(suffix=".csv")
    with os.fdopen(fd, "w") as f:
        for row in rows:
            f.write(",".join(repr(x) for x in row) + "\n")
    return path


class Bounds(unittest.TestCase):
    def test_identity(self):
        path = write_csv([[1.0 if i == j else 0.0 for j in range(5)] for i in range(5)])
        rep = run_json("bounds", path)["report"]
        for key in ("log_per_exact", "log_F", "log_max_cw", "log_lms"):
            self.assertEqual(rep[key], 0, key)

    def test_uniform_three(self):
        path = write_csv([[1 / 3] * 3] * 3)
        doc = run_json("bounds", path)
        rep = doc["report"]
        self.assertAlmostEqual(rep["log_per_exact"], math.log(2 / 9), places=12)
        self.assertAlmostEqual(rep["log_F"], 6 * math.log(2 / 3), places=12)
        self.assertGreaterEqual(rep["log_per_exact"], rep["log_max_cw"] - 1e-7)
        self.assertGreaterEqual(rep["log_max_cw"], rep["log_F"] - 1e-7)
        self.assertTrue(doc["ok"])

    def test_example2(self):
        block = [[0.5, 0.5], [0.5, 0.5]]
        rows = [[0.0] * 6 for _ in range(6)]
        for b in range(3):
            for i in range(2):
                for j in range(2):
                    rows[2 * b + i][2 * b + j] = block[i][j]
        rep = run_json("bounds", write_csv(rows))["report"]
        self.assertAlmostEqual(math.exp(rep["log_per_exact"] - rep["log_F"]), 8.0, places=10)

    def test_json_matrix_and_sinkhorn(self):
        fd, path = tempfile.mkstemp(suffix=".json")
        with os.fdopen(fd, "w") as f:
            json.dump({"n": 2, "entries": [[1, 2], [3, 4]]}, f)
        doc = run_json("bounds", path, "--sinkhorn")
        self.assertIsNotNone(doc["sinkhorn"])
        # per([[1,2],[3,4]]) = 10 and the scaled permanent times the factor product recovers it.
        self.assertAlmostEqual(doc["report"]["log_per_exact"] - doc["sinkhorn"]["log_factor_product"], math.log(10), places=9)

    def test_bad_input_exit_code(self):
        path = write_csv([[1, 1], [1]])
        self.assertEqual(run("bounds", path, check_exit=None).returncode, 2)
        not_stochastic = write_csv([[1, 1], [1, 1]])
        self.assertEqual(run("bounds", not_stochastic, check_exit=None).returncode, 2)
        self.assertNotIn(run("bounds", "/nonexistent.csv", check_exit=None).returncode, (0, 1))

    def test_holder_variant_is_reported_not_counted(self):
        # On J_3 / 3 the sum-of-squares reading is below the permanent; the run
        # still succeeds because that reading is not a proven inequality.
        doc = run_json("bounds", write_csv([[1 / 3] * 3] * 3), "--holder", "sum-of-squares")
        holder = [c for c in doc["checks"] if c["check"] == "holder_sum_of_squares_ge_per"][0]
        self.assertFalse(holder["proven"])
        self.assertFalse(holder["holds"])
        self.assertEqual(doc["violations"], 0)


class Verify(unittest.TestCase):
    def test_small_corpus_has_no_violations(self):
        doc = run_json("verify", "--count", 60, "--n-max", 7)
        self.assertEqual(doc["violations"], 0)
        self.assertEqual({s["inequality"] for s in doc["summary"]},
                         {"per_ge_cw", "cw_ge_F", "schrijver", "lms_ge_F", "sd_ge_F", "vdw", "gurvits", "holder"})

    def test_single_inequality(self):
        doc = run_json("verify", "--count", 20, "--inequality", "schrijver")
        self.assertEqual([s["inequality"] for s in doc["summary"]], ["schrijver"])

    def test_reproducible_across_runs_and_threads(self):
        a = run("verify", "--count", 40, "--n-max", 7, "--seed", 7, "--threads", 1).stdout
        b = run("verify", "--count", 40, "--n-max", 7, "--seed", 7, "--threads", 3).stdout
        c = run("verify", "--count", 40, "--n-max", 7, "--seed", 7, env={"PERMABOUND_THREADS": "2"}).stdout
        self.assertEqual(a, b)
        self.assertEqual(a, c)
        d = run("verify", "--count", 40, "--n-max", 7, "--seed", 8).stdout
        self.assertNotEqual(a, d)

    def test_rejects_large_n(self):
        self.assertEqual(run("verify", "--n-max", 12, check_exit=None).returncode, 2)


class Counterexample(unittest.TestCase):
    def test_crossover(self):
        doc = run_json("counterexample")
        self.assertEqual(doc["lms_crossover_n"], 90)
        rows = {r["n"]: r for r in doc["rows"]}
        self.assertLess(rows[88]["lms_minus_per"], 0)
        self.assertGreater(rows[90]["lms_minus_per"], 0)
        self.assertLessEqual(abs(doc["s1_minus_m1"]["grid_argmax"] - 0.721), 0.01)
        self.assertTrue(all(c["holds"] for c in doc["closed_form_checks"]))
        self.assertEqual(doc["violations"], 0)


class Almc(unittest.TestCase):
    def test_enumerate_r2_n4(self):
        doc = run_json("almc", "--r", 2, "--n", 4)
        self.assertEqual(doc["matrices"], 282)
        self.assertEqual(doc["violations"], 0)
        self.assertTrue(doc["convergence"]["monotone"])
        diffs = [r["abs_difference"] for r in doc["convergence"]["rows"][:4]]
        self.assertEqual(diffs, sorted(diffs, reverse=True))

    def test_r3_m_equals_n(self):
        doc = run_json("almc", "--r", 3, "--n", 3, "--m", 3)
        self.assertEqual(doc["matrices"], 55)
        self.assertEqual([r["m"] for r in doc["per_m"]], [3])
        self.assertEqual(doc["violations"], 0)

    def test_sample_mode_and_threads(self):
        a = run("almc", "--r", 2, "--n", 6, "--mode", "sample", "--samples", 200, "--threads", 1).stdout
        b = run("almc", "--r", 2, "--n", 6, "--mode", "sample", "--samples", 200, "--threads", 4).stdout
        self.assertEqual(a, b)
        doc = json.loads(a)
        jsonschema.validate(doc, json.loads((SCHEMAS / "almc.schema.json").read_text()))
        self.assertEqual(doc["violations"], 0)

    def test_cap(self):
        self.assertEqual(run("almc", "--r", 2, "--n", 5, "--cap", 100, check_exit=None).returncode, 2)


class RatioScan(unittest.TestCase):
    def test_example2_exact(self):
        doc = run_json("ratio-scan", "--family", "example2")
        for row in doc["rows"]:
            self.assertAlmostEqual(row["log_ratio_per_n"], 0.5 * math.log(2), places=12)
        self.assertEqual(doc["violations"], 0)

    def test_example1_closed_form(self):
        doc = run_json("ratio-scan", "--family", "example1", "--n-min", 200, "--n-max", 200)
        row = doc["rows"][0]
        self.assertAlmostEqual(doc["reference"], 0.5 * (1 - math.log(2)), places=15)
        # Independent evaluation of the n = 200 closed form in Python.
        n = 200
        a, b = 1 / (2 * (n - 1)), 0.5 - 1 / (2 * (n - 1))
        terms = [i * math.log(b / a) - math.lgamma(i + 1) for i in range(n + 1)]
        top = max(terms)
        log_per = math.lgamma(n + 1) + n * math.log(a) + top + math.log(sum(math.exp(t - top) for t in terms))
        log_f = n * 0.5 * math.log(0.5) + n * (n - 1) * (1 - a) * math.log(1 - a)
        self.assertAlmostEqual(row["log_ratio_per_n"], (log_per - log_f) / n, places=10)

    def test_uniform_tends_to_zero(self):
        doc = run_json("ratio-scan", "--family", "uniform", "--n-min", 2, "--n-max", 12)
        vals = [r["log_ratio_per_n"] for r in doc["rows"]]
        self.assertLess(abs(vals[-1]), abs(vals[0]))

    def test_regular(self):
        doc = run_json("ratio-scan", "--family", "regular", "--n-min", 4, "--n-max", 8, "--r", 2)
        self.assertEqual(doc["violations"], 0)


class Probe(unittest.TestCase):
    def test_strong_on_regular(self):
        doc = run_json("probe", "--conjecture", "strong", "--corpus", "regular", "--count", 30)
        self.assertGreaterEqual(doc["summary"]["min_slack"], 0)

    def test_optimizational_on_dominant(self):
        doc = run_json("probe", "--conjecture", "optimizational", "--corpus", "dominant", "--count", 30)
        self.assertGreaterEqual(doc["summary"]["min_slack"], -1e-7)

    def test_counterexamples_never_fail_the_run(self):
        proc = run("probe", "--conjecture", "lms", "--corpus", "kn", "--n-min", 80, "--n-max", 100, check_exit=0)
        doc = json.loads(proc.stdout)
        jsonschema.validate(doc, json.loads((SCHEMAS / "probe.schema.json").read_text()))
        self.assertGreater(doc["summary"]["counterexamples"], 0)
        # Corpus index 5 is K_90, a 135 x 135 matrix.
        self.assertEqual(doc["summary"]["first_counterexample"], {"index": 5, "n": 135})
        self.assertEqual(doc["violations"], 0)

    def test_sidak_on_kn(self):
        doc = run_json("probe", "--conjecture", "sidak", "--corpus", "kn", "--n-min", 2, "--n-max", 60)
        self.assertGreater(doc["summary"]["counterexamples"], 0)

    def test_every_conjecture_validates(self):
        for conj in ("strong", "mild", "optimizational", "cap_product", "sidak", "lms"):
            run_json("probe", "--conjecture", conj, "--count", 8, "--n-max", 5)


class Sample(unittest.TestCase):
    def test_r1_perm_is_one(self):
        doc = run_json("sample", "--model", "hw", "--r", 1, "--samples", 100)
        self.assertEqual(doc["estimate"]["mean"], 1)

    def test_boolean_probability_and_per_sample_dump(self):
        fd, path = tempfile.mkstemp(suffix=".csv")
        os.close(fd)
        doc = run_json("sample", "--model", "bm", "--r", 2, "--n", 30, "--estimator", "prob_boolean",
                       "--samples", 5000, "--per-sample", path)
        self.assertLess(abs(doc["estimate"]["mean"] - math.exp(-0.5)), 0.03)
        lines = Path(path).read_text().splitlines()
        self.assertEqual(lines[0], "index,value")
        self.assertEqual(len(lines), 5001)

    def test_emd_and_determinism(self):
        a = run("sample", "--estimator", "emd", "--n", 8, "--m", 4, "--samples", 100, "--threads", 1).stdout
        b = run("sample", "--estimator", "emd", "--n", 8, "--m", 4, "--samples", 100, "--threads", 2).stdout
        self.assertEqual(a, b)


class Global(unittest.TestCase):
    def test_csv_format(self):
        out = run("ratio-scan", "--family", "example2", "--format", "csv").stdout.splitlines()
        self.assertEqual(out[0], "n,log_per,log_F,log_ratio_per_n,reference,oracle_error,holds")
        self.assertEqual(len(out), 1 + 6)

    def test_out_file(self):
        fd, path = tempfile.mkstemp(suffix=".json")
        os.close(fd)
        proc = run("counterexample", "--n-max", 10, "--out", path)
        self.assertEqual(proc.stdout, "")
        json.loads(Path(path).read_text())

    def test_seventeen_digits(self):
        out = run("ratio-scan", "--family", "example2", "--n-max", 2).stdout
        self.assertIn("0.34657359027997264", out)

    def test_version_and_usage(self):
        self.assertIn("0.1.0", run("--version").stdout)
        self.assertNotEqual(run(check_exit=None).returncode, 0)
        self.assertNotEqual(run("nosuchcommand", check_exit=None).returncode, 0)


if __name__ == "__main__":
    unittest.main(verbosity=2)
