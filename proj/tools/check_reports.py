#!/usr/bin/env python3
"""Validates CLI reports against the shipped schema and checks that the
Markdown rendering carries every value of the JSON document."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

COMMANDS = [
    ["validate", "--case", "petrov_D"],
    ["collineations", "--case", "decomposable_constcurv_1p2"],
    ["heat-symmetries", "--case", "petrov_N"],
    ["commutators", "--case", "petrov_III"],
    ["reduce", "--case", "decomposable_flat_1p2", "--by", "X2"],
    ["classify", "--case", "gradient_hv_flat_frw", "--by", "H2"],
    ["laplace-symmetries", "--case", "decomposable_flat_1p2", "--ansatz-degree", "1"],
    ["paper-suite"],
]


def run(exe, args):
    p = subprocess.run([exe, *args], capture_output=True, text=True)
    return p.returncode, p.stdout


def scalars(doc):
    if isinstance(doc, dict):
        for v in doc.values():
            yield from scalars(v)
    elif isinstance(doc, list):
        for v in doc:
            yield from scalars(v)
    elif isinstance(doc, bool):
        yield "true" if doc else "false"
    elif isinstance(doc, str):
        if doc:
            yield doc
    elif doc is not None:
        yield None  # number formatting is covered by the unit tests


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    validator = jsonschema.Draft202012Validator(json.loads(Path(schema_path).read_text()))
    failures = 0

    def check(ok, what):
        nonlocal failures
        print(("ok   " if ok else "FAIL ") + what)
        failures += not ok

    for args in COMMANDS:
        code, out = run(exe, [*args, "--json"])
        doc = json.loads(out)
        errors = list(validator.iter_errors(doc))
        check(code == 0 and not errors, " ".join(args) + " --json" +
              ("" if not errors else ": " + errors[0].message))
        _, md = run(exe, [*args, "--md"])
        missing = [s for s in scalars(doc) if s is not None and s not in md]
        check(not missing, " ".join(args) + " --md carries the JSON values" +
              ("" if not missing else ": missing " + repr(missing[:3])))

    a = run(exe, ["classify", "--case", "petrov_N", "--json", "--seed", "7", "--tol", "1e-10"])
    b = run(exe, ["classify", "--case", "petrov_N", "--json", "--seed", "7", "--tol", "1e-10"])
    check(a == b, "seed and tolerance determine the report")
    check(json.loads(a[1])["numeric"]["seed"] == 7, "seed is recorded")

    with tempfile.NamedTemporaryFile("w", suffix=".toml", delete=False) as f:
        f.write('[space]\nname = "bad"\ncoords = ["x"]\n[metric]\nrows = [["q"]]\n')
    code, out = run(exe, ["validate", f.name, "--json"])
    doc = json.loads(out)
    check(code == 1 and not list(validator.iter_errors(doc)) and doc["error"]["line"] == 5,
          "parse errors are reported as schema-valid JSON with a line")
    Path(f.name).unlink()
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
