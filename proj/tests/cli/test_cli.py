"""End-to-end checks of the icem command line tool.

Usage: test_cli.py <path-to-icem> <fixtures-dir>
"""

import math
import subprocess
import sys
import tempfile
from pathlib import Path

EXE = sys.argv[1]
FIX = Path(sys.argv[2])
failures = []


def run(*args):
    return subprocess.run([EXE, *map(str, args)], capture_output=True, text=True)


def fields(stdout):
    out = {}
    for line in stdout.splitlines():
        key, sep, value = line.partition(": ")
        if sep:
            out[key] = value
    return out


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def close(a, b, tol):
    return abs(float(a) - b) <= tol


# measure
r = run("measure", FIX / "phi1.json")
f = fields(r.stdout)
check("measure phi1 exit 0", r.returncode == 0, r.stderr)
check("measure phi1 value", close(f.get("value", "nan"), 37 / 72, 1e-8), r.stdout)
check("measure phi1 rank", f.get("rank_used") == "3")
check("measure phi1 components sum",
      close(float(f["C_1"]) + float(f["C_2"]), float(f["value"]), 1e-8))
check("measure phi1 concurrence", close(f["concurrence"], math.sqrt(11 / 12), 1e-8))
check("measure phi1 concentratable", close(f["concentratable"], 11 / 36, 1e-8))

r = run("--scheme", "printed", "measure", FIX / "phi1.json")
check("printed scheme", close(fields(r.stdout)["value"], 17 / 36, 1e-8), r.stdout)

r = run("measure", FIX / "phi2.json")
check("measure phi2", close(fields(r.stdout)["value"], 0.512587, 1e-6), r.stdout)

r = run("measure", FIX / "product.json")
check("product is separable", fields(r.stdout).get("verdict") == "separable", r.stdout)

r = run("--force-rank", "3", "measure", FIX / "bell.json")
check("force-rank pins r", fields(r.stdout).get("rank_used") == "4", r.stdout)

# exit codes
check("malformed file exits 2", run("measure", FIX / "malformed.json").returncode == 2)
check("missing file exits 2", run("measure", FIX / "nope.json").returncode == 2)
check("bad flag exits 2", run("measure", "--bogus").returncode == 2)
check("unnormalized exits 3", run("measure", FIX / "unnormalized.json").returncode == 3)
check("invalid cut exits 3", run("measure", FIX / "phi1.json", "--cut", "5").returncode == 3)
check("full cut exits 3", run("measure", FIX / "ghz.json", "--cut", "0,1,2").returncode == 3)
check("resource cap exits 4",
      run("--max-amplitudes", "100", "swaptest", FIX / "phi1.json").returncode == 4)

# multipartite / classify
f = fields(run("multipartite", FIX / "ghz.json").stdout)
check("GHZ means", close(f["arithmetic"], 0.25, 1e-9) and close(f["geometric"], 0.25, 1e-9))
f = fields(run("multipartite", FIX / "w.json").stdout)
check("W means", close(f["arithmetic"], 2 / 9, 1e-9) and close(f["geometric"], 2 / 9, 1e-9))
r = run("multipartite", "--per-cut", FIX / "zero_bell.json")
f = fields(r.stdout)
check("|0>Bell geometric zero", close(f["geometric"], 0.0, 1e-12))
check("--per-cut lists 6 cuts", r.stdout.count("cut {") == 6, r.stdout)
check("classify GHZ", run("classify", FIX / "ghz.json").stdout.strip() == "genuinely-entangled")
check("classify |0>Bell",
      run("classify", FIX / "zero_bell.json").stdout.strip() == "entangled-not-genuine")
check("classify product", run("classify", FIX / "product.json").stdout.strip() == "fully-separable")

# locc
r = run("locc", FIX / "spectrum_x.json", FIX / "spectrum_y.json")
f = fields(r.stdout)
check("locc incomparable", f.get("relation") == "incomparable", r.stdout)
check("locc table", "2,0.2025,0.2008125,1" in r.stdout, r.stdout)
r = run("locc", FIX / "spectrum_bell.json", FIX / "spectrum_product.json")
check("locc bell -> product", fields(r.stdout).get("relation") == "forward-only", r.stdout)

# roof
r = run("roof", FIX / "werner_0.2.json", "--restarts", "8")
f = fields(r.stdout)
check("roof Werner 0.2", r.returncode == 0 and float(f["value_upper_bound"]) <= 1e-6, r.stdout)
check("roof reconstruction", float(f["reconstruction_error"]) < 1e-10)
check("roof of a pure file", close(fields(run("roof", FIX / "bell.json", "--restarts", "4").stdout)
                                   ["value_upper_bound"], 0.25, 1e-6))

# swaptest
r = run("swaptest", FIX / "phi1.json", "--shots", "1000", "--seed", "3")
f = fields(r.stdout)
check("swaptest phi1", close(f["simulated_1_minus_p0"], 37 / 72, 1e-8), r.stdout)
check("swaptest shots", f.get("shots") == "1000")
r2 = run("swaptest", FIX / "phi1.json", "--shots", "1000", "--seed", "3")
check("swaptest seeded", r.stdout == r2.stdout)
check("swaptest r=0 exits 3", run("swaptest", FIX / "bell.json", "--r", "0").returncode == 3)

# figures
r = run("figure1", "--samples", "8")
check("figure1 csv", r.stdout.splitlines()[0] == "beta1,beta2" and len(r.stdout.splitlines()) == 9)
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "fig2.csv"
    r = run("figure2", "--samples", "200", "--out", out)
    check("figure2 writes file", out.read_text().startswith("t,icem_phi2,icem_phi1,equal_flag"))
    check("figure2 reports 6 points", r.stdout.count("\n# ") == 6, r.stdout)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
