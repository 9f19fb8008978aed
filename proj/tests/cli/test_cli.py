#
# Copyright 2026 The sgldp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the sgldp command-line tool."""

import json
import math
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

EXE = sys.argv.pop(1) if len(sys.argv) > 1 else "sgldp"
if "/" in EXE:
    EXE = str(Path(EXE).resolve())
TWO_CLIQUES = {"weights": [0.5, 0.5], "values": [[1, 0], [0, 1]]}


def run(*args, cwd=None):
    return subprocess.run([EXE, *args], capture_output=True, text=True, cwd=cwd)


class Cli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        (self.dir / "twoclique.json").write_text(json.dumps(TWO_CLIQUES))

    def tearDown(self):
        self.tmp.cleanup()

    def call(self, *args, code=0):
        r = run(*args, cwd=self.dir)
        self.assertEqual(r.returncode, code, r.stderr)
        return r

    def report(self, *args):
        out = json.loads(self.call(*args).stdout)
        self.assertEqual(out["formatVersion"], 1)
        self.assertIn("config", out)
        self.assertIn("version", out)
        return out

    def test_rate_j_two_cliques(self):
        r = self.report("rate", "--func", "J", "--alpha", "0.5,0.5", "--p", "identity2", "--graphon", "twoclique.json")
        self.assertEqual(r["result"]["value"], 0)
        self.assertEqual(r["config"]["alpha"], "0.5,0.5")
        off = self.report("rate", "--func", "J", "--alpha", "0.3,0.7", "--p", "identity2", "--graphon", "twoclique.json")
        self.assertEqual(off["result"]["value"], "inf")
        self.assertTrue(off["result"]["infinityCertified"])

    def test_rate_r_and_i(self):
        r = self.report("rate", "--func", "R", "--p", "identity2", "--graphon", "twoclique.json")
        self.assertEqual(r["result"]["value"], 0)
        self.assertAlmostEqual(r["result"]["witnessAlpha"][0], 0.5, delta=0.05)
        i = self.report("rate", "--func", "I", "--p", "0.5", "--graphon", "twoclique.json")
        self.assertAlmostEqual(i["result"]["value"], 0.5 * math.log(2), places=12)

    def test_distance_exact_self_is_zero(self):
        r = self.report("distance", "--exact", "twoclique.json", "twoclique.json")
        self.assertEqual(r["result"]["value"], 0)
        s = self.report("distance", "twoclique.json", "twoclique.json")
        self.assertEqual(s["result"]["upper"], 0)
        self.assertIn("witness", s["result"])
        self.assertIn("restartsUsed", s["result"])

    def test_distance_graphs(self):
        (self.dir / "k3.edges").write_text("3\n0 1\n1 2\n0 2\n")
        (self.dir / "e3.edges").write_text("3\n")
        r = self.report("distance", "--exact", "k3.edges", "e3.edges")
        self.assertAlmostEqual(r["result"]["value"], 2 / 3, places=12)

    def test_distance_coloured(self):
        (self.dir / "a.json").write_text(json.dumps({"weights": [1], "values": [[0]], "colours": [1], "k": 2}))
        (self.dir / "b.json").write_text(
            json.dumps({"weights": [0.5, 0.5], "values": [[0, 0], [0, 0]], "colours": [1, 2], "k": 2}))
        r = self.report("distance", "--coloured", "--exact", "a.json", "b.json")
        self.assertAlmostEqual(r["result"]["value"], 1.0, places=15)

    def test_ldp_curve_limit_column(self):
        r = self.call("ldp-curve", "--model", "gnp:0.5", "--event", "density-ge:0.8", "--n", "10..200", "--seed", "7",
                      "--format", "csv")
        lines = [l for l in r.stdout.splitlines() if not l.startswith("#")]
        self.assertEqual(lines[0], "n,s_n,logProb,normalized,method,stderr,limit")
        rows = [l.split(",") for l in lines[1:]]
        self.assertEqual([int(x[0]) for x in rows], list(range(10, 201, 10)))
        limit = 0.5 * (0.8 * math.log(0.8 / 0.5) + 0.2 * math.log(0.2 / 0.5))
        for row in rows:
            self.assertAlmostEqual(float(row[6]), limit, places=12)
            self.assertAlmostEqual(float(row[6]), 0.0963724, places=7)
        self.assertLess(abs(float(rows[-1][3]) - limit), 0.05 * limit)
        self.assertTrue(r.stdout.startswith("# sgldp"))

    def test_byte_identical_and_jobs_independent(self):
        args = ["ldp-curve", "--model", "gnp:0.3", "--event", "density-ge:0.5", "--n", "12,16", "--seed", "3",
                "--methods", "tilted", "--samples", "4000"]
        a = self.call(*args).stdout
        b = self.call(*args).stdout
        self.assertEqual(a, b)
        self.call(*args, "--jobs", "1", "--out", "j1")
        self.call(*args, "--jobs", "4", "--out", "j4")
        self.assertEqual((self.dir / "j1/curve.csv").read_bytes(), (self.dir / "j4/curve.csv").read_bytes())
        r1 = json.loads((self.dir / "j1/report.json").read_text())
        r4 = json.loads((self.dir / "j4/report.json").read_text())
        self.assertEqual(r1["result"]["points"], r4["result"]["points"])

    def test_sample_layout_and_determinism(self):
        (self.dir / "spec.json").write_text(json.dumps({"a": [3, 3], "p": [[0.5, 0.5], [0.5, 0.5]]}))
        self.call("sample", "--spec", "spec.json", "--count", "3", "--seed", "4", "--out", "o1")
        self.call("sample", "--spec", "spec.json", "--count", "3", "--seed", "4", "--out", "o2")
        for name in ["000000.edges", "000001.edges", "000002.edges", "manifest.jsonl"]:
            self.assertEqual((self.dir / "o1/samples" / name).read_bytes(), (self.dir / "o2/samples" / name).read_bytes())
        manifest = [json.loads(l) for l in (self.dir / "o1/samples/manifest.jsonl").read_text().splitlines()]
        self.assertEqual(len(manifest), 3)
        self.assertEqual(set(manifest[0]), {"seed", "spec", "summary"})
        rep = json.loads((self.dir / "o1/report.json").read_text())
        self.assertEqual(rep["command"], "sample")
        w = self.report("sample", "--model", "wrandom", "--graphon", "twoclique.json", "--n", "6", "--seed", "1")
        self.assertEqual(sum(w["result"]["samples"][0]["blockCounts"]), 6)

    def test_coupling_demo(self):
        r = self.report("coupling-demo", "--a", "3,3", "--b", "4,3", "--seed", "1")
        self.assertAlmostEqual(r["result"]["epsilon"], 1 / 6, places=15)
        self.assertAlmostEqual(r["result"]["bound"], 1 / 3, places=12)
        self.assertTrue(r["result"]["withinEpsilonBound"])

    def test_config_file_and_precedence(self):
        (self.dir / "cfg.json").write_text(json.dumps({"func": "J", "alpha": "0.3,0.7", "p": "identity2",
                                                       "graphon": "twoclique.json"}))
        r = self.report("rate", "--config", "cfg.json")
        self.assertEqual(r["result"]["value"], "inf")
        r = self.report("rate", "--config", "cfg.json", "--alpha", "0.5,0.5")
        self.assertEqual(r["result"]["value"], 0)
        (self.dir / "nested.json").write_text(json.dumps({"rate": {"func": "I", "p": 0.5, "graphon": "twoclique.json"}}))
        r = self.report("rate", "--config", "nested.json")
        self.assertEqual(r["result"]["func"], "I")

    def test_exit_codes(self):
        r = self.call("ldp-curve", "--model", "gnp:0.5", "--event", "density-ge:0.8", "--n", "10", code=2)
        self.assertIn("--seed", r.stderr)
        self.call("sample", "--spec", "x.json", code=2)
        self.call("coupling-demo", "--a", "3", "--b", "3", code=2)
        self.call("rate", "--func", "I", "--bogus", "1", code=2)
        self.call("rate", "--func", "I", "--p", "0.5", "--graphon", "missing.json", code=2)
        (self.dir / "bad.json").write_text('{"weights":[0.5,0.5],"values":[[1,0],["a",1]]}')
        r = self.call("rate", "--func", "I", "--p", "0.5", "--graphon", "bad.json", code=2)
        self.assertIn("bad.json: $.values[1][0]", r.stderr)
        (self.dir / "broken.json").write_text('{"weights":[1]')
        r = self.call("distance", "broken.json", "twoclique.json", code=2)
        self.assertIn("malformed JSON", r.stderr)
        r = self.call("ldp-curve", "--model", "gnp:0.5", "--event", "density-ge:0.8", "--n", "10", "--seed", "1",
                      "--methods", "enumeration", code=1)
        self.assertIn("no method is feasible", r.stderr)


if __name__ == "__main__":
    unittest.main(verbosity=2)
