#!/usr/bin/env python3
"""Exit codes and report fields of every qcf subcommand.

usage: cli_test.py QCF_BINARY DATA_DIR
"""
import json
import os
import subprocess
import sys
import tempfile

QCF = sys.argv[1]
DATA = sys.argv[2]
failures = []


def data(name):
    return os.path.join(DATA, name)


def run(args, want_rc, env=None, stdout_json=True):
    p = subprocess.run([QCF, *args], capture_output=True, text=True, env=env)
    label = "qcf " + " ".join(args)
    if p.returncode != want_rc:
        failures.append(f"{label}: exit {p.returncode}, wanted {want_rc}\n{p.stderr}")
        return None
    if not p.stderr.strip():
        failures.append(f"{label}: no summary on stderr")
    if want_rc == 2 or not stdout_json:
        return None
    try:
        return json.loads(p.stdout)
    except json.JSONDecodeError as e:
        failures.append(f"{label}: stdout is not JSON ({e})")
        return None


def expect(cond, what):
    if not cond:
        failures.append(what)


# seed
r = run(["seed", "check", "--seed", data("a2_principal.json")], 0)
if r:
    expect(r["compatible"] and r["skew_symmetrizable"], "a2 seed compatible")
    expect([d["dprime"] for d in r["dprime"]] == [1, 1], "a2 d' = (1,1)")
    expect(r["status"] == "pass", "status field")
run(["seed", "check", "--seed", data("incompatible.json")], 1)
run(["seed", "check", "--seed", data("malformed.json")], 2)
run(["seed", "check", "--seed", data("missing.json")], 2)
run(["seed", "check", "--type", "A2", "--classical"], 0)
run(["seed", "check", "--seed", data("isolated.json"), "--ring", "Zmod:2:1"], 1)
r = run(["seed", "mutate", "--seed", data("a2_principal.json"), "-k", "1"], 0)
if r:
    expect(r["seed"]["B"][:2] == [[0, -1], [1, 0]], "mu_1 of the A2 principal part")
    expect(r["dprime_preserved"], "d' preserved")
r = run(["seed", "mutate", "--seed", data("a2_principal.json"), "--seq", "1,1"], 0)
if r:
    expect(r["seed"]["B"] == [[0, 1], [-1, 0], [1, 0], [0, 1]], "mu_1 mu_1 = id")
run(["seed", "mutate", "--seed", data("a2_principal.json"), "-k", "3"], 2)
run(["seed", "mutate", "--seed", data("a2_principal.json")], 2)

# var
r = run(["var", "expand", "--seed", data("sl2_bz.json"), "--seq", "1", "--index", "1"], 0)
if r:
    v = r["variables"][0]
    expect(v["g"] == [1, -1, 1], "SL2 g-vector")
    expect([f["n"] for f in v["F"]] == [[0], [1]], "SL2 F-polynomial 1 + y")
    expect(v["pointed"], "SL2 variable pointed")
r = run(["var", "expand", "--type", "A1", "--word", "1,-1", "--seq", "1"], 0)
if r:
    expect(r["variables"][0]["g"] == [1, -1, 1], "BZ seed from --type/--word")
run(["var", "expand", "--seed", data("isolated.json"), "--ring", "Zmod:2:1", "--seq", "1"], 2)
run(["var", "expand", "--seed", data("isolated.json"), "--ring", "Z", "--seq", "1"], 0)
run(["var", "expand", "--type", "A2", "--ring", "nonsense", "--seq", "1"], 2)

# check
r = run(["check", "exchange", "--type", "G2", "--seq", "1,2,1,2,1,2"], 0)
if r:
    expect(r["failures"] == 0 and len(r["steps"]) == 6, "G2 exchange steps")
r = run(["check", "upper", "--seed", data("a2_principal.json"), "--seq", "1,2", "--index", "1", "--depth", "3",
         "--compactified"], 0)
if r:
    expect(r["pass"] and r["seeds_checked"] > 1, "cluster variable upper")
r = run(["check", "upper", "--seed", data("a2_principal.json"), "--poly", data("inverse_frozen_a2.json"),
         "--compactified"], 1)
if r:
    expect(r["nu"] == {"vertex": 3, "value": -1}, "nu_3 = -1 reported")
run(["check", "upper", "--seed", data("a2_principal.json"), "--inverse", "3"], 0)
run(["check", "upper", "--seed", data("a2_principal.json"), "--inverse", "3", "--compactified"], 1)
run(["check", "upper", "--type", "A2", "--word", "1,2,1,-1,-2,-1", "--seq", "1", "--index", "1", "--depth", "2",
     "--compactified"], 0)
r = run(["check", "semival", "--type", "A2", "--seq", "1", "--index", "1"], 0)
if r:
    expect(all(c["equal"] for c in r["checks"]), "semival rows")

# trop
r = run(["trop", "apply", "--type", "A2", "--vector", "1,0,0,0", "--seq", "1"], 0)
if r:
    expect(r["result"] == [-1, 0, 1, 0], "tropical mu_1")
r = run(["trop", "apply", "--type", "A2", "--vector", "3,-2,1,4", "--seq", "1,2,1,2,1"], 0)
if r:
    expect(r["result"] == [-2, 3, 1, 4], "pentagon returns the swapped vector")
run(["trop", "apply", "--type", "A2", "--vector", "1,0", "--seq", "1"], 2)

# graph
r = run(["graph", "explore", "--type", "A2"], 0)
if r:
    expect(r["closed"] and r["seeds"] == 5, "A2 exchange graph has 5 seeds")
    expect(r["cluster_variables"] == 5 and r["non_initial_variables"] == 3, "A2 variable counts")
r = run(["graph", "explore", "--type", "A2", "--classical", "--ring", "Z"], 0)
if r:
    expect(r["cluster_variables"] == 5, "classical A2")
r = run(["graph", "explore", "--type", "A2", "--max-depth", "1"], 1)
if r:
    expect(not r["closed"], "truncated exploration is not closed")

# lie
r = run(["lie", "roots", "--type", "G2"], 0)
if r:
    expect(r["highest_root"] == [3, 2] and r["num_roots"] == 12, "G2 roots")
r = run(["lie", "w0", "--type", "E6"], 0)
if r:
    expect(r["length"] == 36 and r["reduced"], "E6 w0")
run(["lie", "w0", "--type", "X9"], 2)
run(["lie", "w0"], 2)

# bz
r = run(["bz", "build", "--type", "A1", "--word", "1,-1"], 0)
if r:
    expect(r["B"] == [[-1], [0], [-1]], "SL2 Btilde")
    expect(r["dprime"] == [{"id": 1, "dprime": 2}], "SL2 d'")
r = run(["bz", "build", "--type", "A1", "--word", "1,-1", "--classical"], 0)
if r:
    expect(r["B"] == [[1], [0], [1]] and r["Lambda"] == [[0] * 3] * 3, "classical SL2 seed")
run(["bz", "build", "--type", "A2", "--word", "1,1"], 2)
run(["bz", "build", "--type", "A2", "--word", "1,x"], 2)
r = run(["bz", "bullet", "--type", "A2"], 0)
if r:
    expect(r["word"] == [1, 2, 1, -1, -2, -1] and r["w0"] == [1, 2, 1], "A2 bullet word")
run(["bz", "bullet", "--type", "A2", "--w0", "1,2"], 2)

# oracle
r = run(["oracle", "g2-verify"], 0)
if r:
    expect(r["ring"] == "ZvLoc" and all(c["pass"] for c in r["checks"]), "G2 identities")
run(["oracle", "g2-verify", "--ring", "Zv"], 2)
r = run(["oracle", "adjoint", "--type", "G2", "--check-relations"], 0)
if r:
    expect(r["dimension"] == 14, "G2 adjoint dimension")
run(["oracle", "minor-eq", "--type", "A1", "--lhs", "D1[;]*D1[1;1]", "--rhs", "(v^2)D1[;1]*D1[1;] + 1"], 0)
r = run(["oracle", "minor-eq", "--type", "A1", "--lhs", "D1[;]*D1[1;1]", "--rhs", "(v^-2)D1[;1]*D1[1;] + 1"], 1)
if r:
    expect("witness_word" in r, "failing identity reports a witness word")
run(["oracle", "minor-eq", "--type", "A1", "--lhs", "D1[;", "--rhs", "1"], 2)
run(["oracle", "minor-eq", "--type", "A1"], 2)
r = run(["oracle", "minor-eq", "--type", "A1", "--word", "1,-1"], 0)
if r:
    expect(len(r["exchanges"]) == 1, "SL2 exchange vs minors")
r = run(["oracle", "dede", "--type", "A1"], 0)
if r:
    expect(len(r["checks"]) == 4, "DeDe A1 rows")
run(["oracle", "chevalley", "--type", "A3", "--samples", "50", "--rng-seed", "4"], 0)
r = run(["oracle", "psi", "--type", "A2", "--beta", "1,0"], 0)
if r:
    d = r["decompositions"][0]
    expect(d["beta1"] == [1, 1] and d["beta2"] == [0, -1], "psi(alpha_1) = (theta, -alpha_2)")
r = run(["oracle", "psi", "--type", "G2"], 0)
if r:
    expect(len(r["decompositions"]) == 10, "G2 psi covers all roots but +-theta")
run(["oracle", "psi", "--type", "A2", "--beta", "1,1"], 2)
run(["oracle", "psi", "--type", "A2", "--beta", "2,0"], 2)

# general
run(["frobnicate"], 2)
run([], 2)
with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "r.json")
    run(["lie", "w0", "--type", "A2", "-o", out], 0, stdout_json=False)
    try:
        with open(out) as f:
            expect(json.load(f)["length"] == 3, "-o writes the report")
    except (OSError, json.JSONDecodeError) as e:
        failures.append(f"-o: {e}")
env = dict(os.environ, QCF_THREADS="1")
r = run(["check", "upper", "--type", "B2", "--seq", "1", "--index", "1", "--depth", "3"], 0, env=env)
env["QCF_THREADS"] = "4"
r4 = run(["check", "upper", "--type", "B2", "--seq", "1", "--index", "1", "--depth", "3"], 0, env=env)
if r and r4:
    expect(r["seeds_checked"] == r4["seeds_checked"], "thread count does not change the result")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
