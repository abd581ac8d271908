#!/usr/bin/env python3
"""End-to-end checks of the secbc command-line tool."""

import csv
import json
import os
import subprocess
import sys
import tempfile
import unittest

BIN = None


def run(*args, expect=0):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=600)
    if p.returncode != expect:
        raise AssertionError(f"{args}: exit {p.returncode}, expected {expect}\n{p.stdout}\n{p.stderr}")
    return p


def read_csv(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["r1_bits", "r2_bits"], rows[0]
    return [(float(a), float(b)) for a, b in rows[1:]]


def r2_at(points, r1):
    best = -1.0
    for (a1, a2), (b1, b2) in zip(points, points[1:]):
        if a1 - 1e-12 <= r1 <= b1 + 1e-12:
            t = 0.0 if b1 == a1 else (r1 - a1) / (b1 - a1)
            best = max(best, a2 + t * (b2 - a2))
    return best


class Cli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def write(self, name, obj):
        with open(self.path(name), "w") as f:
            f.write(obj if isinstance(obj, str) else json.dumps(obj))
        return self.path(name)

    def test_region_bbc_endpoint(self):
        out = self.path("bbc.csv")
        rep = json.loads(run("--seed", "1", "region", "bbc", "--r12", "0.2", "--out", out).stdout)
        self.assertEqual(rep["exit_code"], 0)
        self.assertEqual(rep["seed"], 1)
        pts = read_csv(out)
        self.assertIn((1.0, 0.0), pts)
        self.assertEqual(max(p[0] for p in pts), 1.0)

    def test_region_r12_shift_bounded(self):
        a, b = self.path("a.csv"), self.path("b.csv")
        run("--seed", "1", "region", "bbc", "--r12", "0", "--out", a)
        run("--seed", "1", "region", "bbc", "--r12", "0.6", "--out", b)
        pa, pb = read_csv(a), read_csv(b)
        for k in range(101):
            r1 = k / 100.0
            lo, hi = r2_at(pa, r1), r2_at(pb, r1)
            self.assertGreaterEqual(hi, lo - 1e-12)
            self.assertLessEqual(hi - lo, 0.6 + 1e-12)

    def test_region_gaussian(self):
        out = self.path("g.csv")
        run("--seed", "1", "region", "gaussian", "--p", "11", "--n1", "1", "--n2", "4", "--r12", "0.2", "--out", out)
        self.assertGreater(len(read_csv(out)), 10)

    def test_region_csv_stable(self):
        a, b = self.path("a.csv"), self.path("b.csv")
        run("--seed", "3", "region", "pd-bbc", "--r12", "0.1", "--sampled", "--samples", "200", "--out", a)
        run("--seed", "3", "region", "pd-bbc", "--r12", "0.1", "--sampled", "--samples", "200", "--out", b)
        with open(a) as fa, open(b) as fb:
            self.assertEqual(fa.read(), fb.read())

    def test_channel_errors(self):
        bad = self.write("bad.json", '{"x_size": 2,')
        self.assertEqual(run("--seed", "1", "region", "--channel", bad, expect=4).returncode, 4)
        rows = self.write("rows.json", {"x_size": 2, "y1_size": 2, "y2_size": 1, "rows": [[0.5, 0.6], [1, 0]]})
        p = run("--seed", "1", "region", "--channel", rows, expect=4)
        self.assertIn("/rows", p.stderr)
        mismatch = self.write(
            "det.json",
            {"x_size": 2, "y1_size": 2, "y2_size": 1, "rows": [[0.5, 0.5], [1, 0]], "structure": "det",
             "g": [0, 0], "h": [0, 0]},
        )
        run("--seed", "1", "region", "--channel", mismatch, expect=5)

    def test_sim_byte_identical(self):
        a, b = self.path("a.json"), self.path("b.json")
        run("--seed", "9", "sim", "resolvability", "--n", "2,3", "--codebooks", "4", "--out", a)
        run("--seed", "9", "sim", "resolvability", "--n", "2,3", "--codebooks", "4", "--out", b)
        with open(a) as fa, open(b) as fb:
            self.assertEqual(fa.read(), fb.read())
        a, b = self.path("c.json"), self.path("d.json")
        run("--seed", "9", "sim", "bc", "--n", "2", "--trials", "30", "--out", a)
        run("--seed", "9", "--threads", "3", "sim", "bc", "--n", "2", "--trials", "30", "--out", b)
        with open(a) as fa, open(b) as fb:
            self.assertEqual(fa.read(), fb.read())

    def test_sim_single_confidential_message(self):
        spec = self.write("one.json", {"preset": "bc-demo", "rates": {"r1": 0.0}})
        rep = json.loads(run("--seed", "4", "sim", "bc", "--spec", spec, "--n", "3", "--trials", "20").stdout)
        res = rep["outputs"]["report"]["results"][0]
        self.assertEqual(res["counts"]["m1"], 1)
        self.assertEqual(res["leakage"]["leakage_bits"], 0.0)

    def test_fme_derivation_match(self):
        rep = json.loads(run("--seed", "1", "fme", "thm1-derivation", "--aux-seed", "12").stdout)
        self.assertEqual(rep["outputs"]["verdict"], "MATCH")

    def test_fme_identity_and_unknown(self):
        system = {
            "vars": ["x", "y"],
            "ineqs": [
                {"coeffs": {"x": 1, "y": 2}, "rhs": "3/2"},
                {"coeffs": {"x": -1}, "rhs": 0},
                {"coeffs": {"y": -1}, "rhs": 0},
            ],
        }
        path = self.write("sys.json", system)
        rep = json.loads(run("--seed", "1", "fme", path).stdout)
        got = rep["outputs"]["system"]
        self.assertEqual(got["vars"], ["x", "y"])
        self.assertEqual(len(got["ineqs"]), 3)
        proj = json.loads(run("--seed", "1", "fme", path, "--eliminate", "y").stdout)["outputs"]["system"]
        self.assertEqual(proj["vars"], ["x"])
        p = run("--seed", "1", "fme", path, "--eliminate", "zeta", expect=2)
        self.assertIn("zeta", p.stderr)

    def test_seed_drawn_and_printed(self):
        p = run("region", "bbc", "--r12", "0.2", "--out", self.path("x.csv"))
        rep = json.loads(p.stdout)
        self.assertTrue(rep["seed_drawn"])
        self.assertIn(str(rep["seed"]), p.stderr)
        self.assertLess(rep["seed"], 2**53)

    def test_usage_errors(self):
        run("sim", "nonsense", expect=1)
        run("--seed", "1", "region", expect=1)


if __name__ == "__main__":
    BIN = os.path.abspath(sys.argv.pop(1))
    unittest.main(verbosity=2)
