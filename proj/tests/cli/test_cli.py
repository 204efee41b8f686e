"""End-to-end checks of the birs executable.

Usage: test_cli.py <birs executable> <fixtures dir>
"""

import json
import os
import socket
import subprocess
import sys
import tempfile
import unittest

BIRS = None
FIXTURES = None

EMPTY_IFC = """ISO-10303-21;
HEADER;
FILE_DESCRIPTION((''),'2;1');
FILE_NAME('empty.ifc','2021-01-01T00:00:00',(''),(''),'','','');
FILE_SCHEMA(('IFC4'));
ENDSEC;
DATA;
#1=IFCPROJECT('0000000000000000000001',$,'Empty',$,$,$,$,$,$);
ENDSEC;
END-ISO-10303-21;
"""


def run(*args, cwd=None):
    return subprocess.run([BIRS, *args], capture_output=True, text=True, cwd=cwd, timeout=120)


def fixture(*parts):
    return os.path.join(FIXTURES, *parts)


def expected():
    with open(fixture("expected.json")) as f:
        return json.load(f)


def read_bytes(path):
    with open(path, "rb") as f:
        return f.read()


def read_pgm(path):
    with open(path, "rb") as f:
        data = f.read()
    magic, dims, maxval, pixels = data.split(b"\n", 3)
    w, h = map(int, dims.split())
    return magic, w, h, int(maxval), pixels


class ExitCodes(unittest.TestCase):
    def test_usage_errors_exit_2(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("fly").returncode, 2)
        self.assertEqual(run("plan", "--from", "A").returncode, 2)

    def test_module_errors_exit_1_with_code(self):
        r = run("--config", fixture("config.json"), "plan", "--from", "NOPE", "--to", "HALL 2044")
        self.assertEqual(r.returncode, 1)
        self.assertTrue(r.stderr.startswith("error: UnknownSpace:"), r.stderr)
        r = run("--config", "/nonexistent/birs.json", "build")
        self.assertEqual(r.returncode, 1)
        self.assertIn("IoError", r.stderr)
        r = run("--config", fixture("config.json"), "report", "--as-of", "15/04/2021")
        self.assertEqual(r.returncode, 1)
        self.assertIn("BadDate", r.stderr)

    def test_help_exits_0(self):
        self.assertEqual(run("--help").returncode, 0)


class Plan(unittest.TestCase):
    def test_route_through_the_hall(self):
        r = run("--config", fixture("config.json"), "plan", "--from", "CORRIDOR OUEST 2019", "--to", "W.C. HOMMES 2002")
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.splitlines()
        self.assertTrue(lines[0].startswith("ROUTE 7 "))
        rooms = [l.split('"')[1] for l in lines if l.startswith("ROOM ")]
        self.assertEqual(rooms, ["CORRIDOR OUEST 2019", "VESTIBULE 2043", "HALL 2044", "VESTIBULE 2042",
                                 "CORRIDOR EST 2007", "ESPACE CLLABORATIF 2004", "W.C. HOMMES 2002"])
        guids = expected()["guids"]
        doors = [l.split()[1] for l in lines if l.startswith("DOOR ")]
        self.assertEqual(doors, [guids[k] for k in ("D1", "D2", "D3", "D4", "D5", "D6")])
        into_hall = [l for l in lines if l.startswith("DOOR " + guids["D2"])][0]
        self.assertTrue(into_hall.endswith("grid_trust=true"))

    def test_output_file_matches_stdout(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "route.txt")
            a = run("--config", fixture("config.json"), "plan", "--from", "HALL 2044", "--to", "BUREAU ENTREPRENEUR 2050")
            b = run("--config", fixture("config.json"), "plan", "--from", "HALL 2044", "--to",
                    "BUREAU ENTREPRENEUR 2050", "-o", out)
            self.assertEqual(b.returncode, 0, b.stderr)
            with open(out) as f:
                self.assertEqual(f.read(), a.stdout)


class Report(unittest.TestCase):
    def test_partitions_ahead_of_schedule(self):
        r = run("--config", fixture("uc3", "config.json"), "report", "--as-of", "2021-04-15")
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.splitlines()
        self.assertEqual(lines[0], "FINDINGS 2")
        findings = [l for l in lines if l.startswith("FINDING ")]
        self.assertEqual(len(findings), 2)
        self.assertTrue(all(" AheadOfSchedule " in l for l in findings))
        guids = expected()["guids"]
        named = {l.split("element=")[1].split()[0] for l in findings}
        self.assertEqual(named, {guids["U1"], guids["U2"]})

    def test_after_install_date_nothing_is_early(self):
        r = run("--config", fixture("uc3", "config.json"), "report", "--as-of", "2021-06-01")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout.splitlines()[0], "FINDINGS 0")

    def test_unplanned_column(self):
        r = run("--config", fixture("uc4", "config.json"), "report")
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.splitlines()
        self.assertEqual(lines[0], "FINDINGS 1")
        self.assertIn(" Anomaly ", lines[1])
        guids = expected()["guids"]
        self.assertTrue(lines[2].strip().startswith("OFFICE " + guids["BUREAU"]))
        self.assertEqual(lines[3].strip(), 'ROUTE "HALL 2044" "VESTIBULE 2042" "BUREAU ENTREPRENEUR 2050"')


class Grid(unittest.TestCase):
    def test_empty_model_is_all_unknown(self):
        with tempfile.TemporaryDirectory() as d:
            ifc = os.path.join(d, "empty.ifc")
            with open(ifc, "w") as f:
                f.write(EMPTY_IFC)
            r = run("grid", "--ifc", ifc, "-o", os.path.join(d, "map.yaml"))
            self.assertEqual(r.returncode, 0, r.stderr)
            magic, w, h, maxval, pixels = read_pgm(os.path.join(d, "map.pgm"))
            self.assertEqual((magic, maxval), (b"P5", 255))
            self.assertEqual(len(pixels), w * h)
            self.assertGreater(w * h, 0)
            self.assertEqual(set(pixels), {205})
            with open(os.path.join(d, "map.yaml")) as f:
                self.assertTrue(f.read().startswith("image: map.pgm\n"))

    def test_fixture_grid_matches_golden(self):
        with tempfile.TemporaryDirectory() as d:
            r = run("--config", fixture("config.json"), "grid", "-o", os.path.join(d, "pavd2_map.yaml"),
                    "--png", os.path.join(d, "pavd2_map.png"))
            self.assertEqual(r.returncode, 0, r.stderr)
            for name in ("pavd2_map.pgm", "pavd2_map.yaml"):
                with open(os.path.join(d, name), "rb") as a, open(fixture("goldens", name), "rb") as b:
                    self.assertEqual(a.read(), b.read(), name)
            with open(os.path.join(d, "pavd2_map.png"), "rb") as f:
                self.assertEqual(f.read(8), b"\x89PNG\r\n\x1a\n")


class Diff(unittest.TestCase):
    def test_uc3_clusters(self):
        r = run("diff", "--planned", fixture("uc3", "planned.yaml"), "--built", fixture("uc3", "built.yaml"))
        self.assertEqual(r.returncode, 0, r.stderr)
        clusters = [l for l in r.stdout.splitlines() if l.startswith("CLUSTER ")]
        self.assertEqual(len(clusters), 2)
        self.assertTrue(all(" EXTRA " in l for l in clusters))

    def test_mismatched_resolution(self):
        with tempfile.TemporaryDirectory() as d:
            meta = os.path.join(d, "coarse.yaml")
            with open(fixture("uc3", "built.yaml")) as f:
                text = f.read().replace("resolution: 0.05", "resolution: 0.1")
            text = text.replace("image: built.pgm", "image: " + fixture("uc3", "built.pgm"))
            with open(meta, "w") as f:
                f.write(text)
            r = run("diff", "--planned", fixture("uc3", "planned.yaml"), "--built", meta)
            self.assertEqual(r.returncode, 1)
            self.assertIn("ResolutionMismatch", r.stderr)


class BuildParseQuery(unittest.TestCase):
    def test_build_is_reproducible(self):
        with tempfile.TemporaryDirectory() as d:
            outs = []
            for i in range(2):
                out = os.path.join(d, str(i))
                r = run("--config", fixture("config.json"), "build", "-o", out)
                self.assertEqual(r.returncode, 0, r.stderr)
                outs.append({n: read_bytes(os.path.join(out, n)) for n in ("model.txt", "store.nt", "topo.txt")})
            self.assertEqual(outs[0], outs[1])
            topo = outs[0]["topo.txt"].decode().splitlines()
            self.assertEqual(topo[0], "BIRS-TOPO 1")
            self.assertEqual(sum(l.startswith("NODE ") for l in topo), 9)
            self.assertEqual(sum(l.startswith("EDGE ") for l in topo), 11)

    def test_query_built_and_stored(self):
        q = '?s a Space ; ?s longName "HALL 2044"'
        r = run("--config", fixture("config.json"), "query", q)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn(expected()["guids"]["HALL"], r.stdout)
        with tempfile.TemporaryDirectory() as d:
            self.assertEqual(run("--config", fixture("config.json"), "build", "-o", d).returncode, 0)
            s = run("query", "--store", os.path.join(d, "store.nt"), q)
            self.assertEqual(s.returncode, 0, s.stderr)
            self.assertEqual(s.stdout, r.stdout)
        bad = run("--config", fixture("config.json"), "query", "?s a")
        self.assertEqual(bad.returncode, 1)
        self.assertIn("QuerySyntax", bad.stderr)

    def test_parse_canonical_is_stable(self):
        with tempfile.TemporaryDirectory() as d:
            c1, c2 = os.path.join(d, "a.ifc"), os.path.join(d, "b.ifc")
            r = run("parse", "--ifc", fixture("pavd2.ifc"), "--canonical", c1)
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(run("parse", "--ifc", c1, "--canonical", c2).returncode, 0)
            with open(c1, "rb") as a, open(c2, "rb") as b:
                self.assertEqual(a.read(), b.read())
        bad = tempfile.NamedTemporaryFile("w", suffix=".ifc", delete=False)
        bad.write("ISO-10303-21;\nDATA;\n#1=IFCWALL('x';\n")
        bad.close()
        try:
            r = run("parse", "--ifc", bad.name)
            self.assertEqual(r.returncode, 1)
            self.assertTrue(r.stderr.startswith("error: "))
        finally:
            os.unlink(bad.name)


class Serve(unittest.TestCase):
    def test_serve_answers_like_plan(self):
        p = subprocess.Popen([BIRS, "--config", fixture("config.json"), "serve", "--listen", "127.0.0.1:0"],
                             stdout=subprocess.PIPE, text=True)
        try:
            banner = p.stdout.readline().strip()
            self.assertTrue(banner.startswith("listening on 127.0.0.1:"), banner)
            port = int(banner.rsplit(":", 1)[1])
            with socket.create_connection(("127.0.0.1", port), timeout=10) as s:
                req = {"v": 1, "type": "req", "id": "1", "op": "path",
                       "payload": {"from": "CORRIDOR OUEST 2019", "to": "W.C. HOMMES 2002"}}
                s.sendall((json.dumps(req) + "\n").encode())
                buf = b""
                while not buf.endswith(b"\n"):
                    chunk = s.recv(65536)
                    if not chunk:
                        break
                    buf += chunk
            res = json.loads(buf)
            self.assertEqual(res["type"], "res")
            self.assertEqual(res["id"], "1")
            names = [n["name"] for n in res["payload"]["nodes"]]
            plan = run("--config", fixture("config.json"), "plan", "--from", "CORRIDOR OUEST 2019", "--to",
                       "W.C. HOMMES 2002")
            cost = float(plan.stdout.split()[2])
            self.assertAlmostEqual(res["payload"]["total_cost"], cost, places=4)
            rooms = [l.split('"')[1] for l in plan.stdout.splitlines() if l.startswith("ROOM ")]
            self.assertEqual(names, rooms)
        finally:
            p.terminate()
            self.assertEqual(p.wait(timeout=10), 0)
            p.stdout.close()


if __name__ == "__main__":
    BIRS = os.path.abspath(sys.argv[1])
    FIXTURES = os.path.abspath(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
