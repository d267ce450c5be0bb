"""Runs the CLI and validates every JSON payload against tools/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

tool = pathlib.Path(sys.argv[1])
schemas = pathlib.Path(sys.argv[2])


def schema(name):
    return json.loads((schemas / f"{name}.schema.json").read_text())


def run(*args, codes=(0, 1)):
    p = subprocess.run([str(tool), *args], capture_output=True, text=True)
    if p.returncode not in codes:
        raise SystemExit(f"{args}: exit {p.returncode}\n{p.stderr}")
    return p


checked = 0


def check(name, payload):
    global checked
    jsonschema.validate(payload, schema(name))
    checked += 1


for op, ident in [("med", "ex04"), ("pi1", "sym01"), ("example3elem", "ex04"), ("delta-zero", "derived")]:
    check("check-identity", json.loads(run("check-identity", "--builtin", op, "--id", ident, "--json").stdout))

for f, pi in [("and", "med"), ("not", "med"), ("xor", "pi1"), ("or", "pi3")]:
    check("decompose", json.loads(run("decompose", "--f-builtin", f, "--builtin", pi, "--json").stdout))

# generation at m=3 beyond arity 1 costs seconds, so it is only requested at cap 1 there
for pi, cap, extra in [("med", "3", ["--generate"]), ("pi2", "2", ["--generate"]), ("example3elem", "2", []),
                       ("delta-zero", "2", []), ("delta-zero", "1", ["--generate"])]:
    check("clone", json.loads(run("clone", "--builtin", pi, "--cap", cap, *extra, "--json").stdout))
check("clone", json.loads(run("clone", "--builtin", "delta-zero", "--cap", "4", "--json", codes=(3,)).stdout))

census = run("census", "--m", "2", "--cap", "2")
check("census-summary", json.loads(census.stderr))
for line in census.stdout.splitlines():
    check("census-record", json.loads(line))
ternary = run("census", "--m", "3", "--require", "ex01", "--flags-only", "--resume", "4000000", "--limit", "500")
check("census-summary", json.loads(ternary.stderr))
for line in ternary.stdout.splitlines():
    check("census-record", json.loads(line))

with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp) / "suite.json"
    run("paper-suite", "--json", str(out))
    check("suite", json.loads(out.read_text()))
    run("clone", "--builtin", "pi1", "--cap", "2", "--export", str(pathlib.Path(tmp) / "frag"))
    check("manifest", json.loads((pathlib.Path(tmp) / "frag" / "manifest.json").read_text()))

print(f"{checked} payloads valid")
