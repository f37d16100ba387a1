#!/usr/bin/env python3
"""Run every CLI subcommand and validate its JSON output against schemas/.

usage: validate_schemas.py <zerodist binary> <schema dir>
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from jsonschema import Draft202012Validator


def main() -> int:
    exe, schema_dir = sys.argv[1], Path(sys.argv[2])
    failures = []

    def run(args, expect=0):
        proc = subprocess.run([exe, *args], capture_output=True, text=True)
        if proc.returncode != expect:
            failures.append(f"{args}: exit {proc.returncode}, expected {expect}: {proc.stderr.strip()}")
        return proc

    def validate(name, text):
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        Draft202012Validator.check_schema(schema)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            failures.append(f"{name}: output is not JSON ({e})")
            return
        errors = sorted(Draft202012Validator(schema).iter_errors(doc), key=str)
        for err in errors[:3]:
            failures.append(f"{name}: {err.message} at {list(err.absolute_path)}")
        print(f"{name:14s} {'ok' if not errors else 'INVALID'}")

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        z = tmp / "z.json"
        w = tmp / "w.json"
        gen_args = ["gen", "--family", "sector", "--count", "200", "--r-max", "5000", "--seed", "3"]
        first = run(gen_args)
        validate("gen", first.stdout)
        if run(gen_args).stdout != first.stdout:
            failures.append("gen: output differs between identical runs")
        z.write_text(first.stdout)
        w.write_text(run(["gen", "--family", "lattice", "--count", "150", "--r-max", "5000", "--seed", "4"]).stdout)
        axis = tmp / "axis.json"
        axis.write_text(json.dumps({"points": [{"re": 0, "im": 3, "mult": 1}, {"re": 2, "im": 0}]}))

        cases = {
            "measures": ["measures", str(z), "--r", "1", "--R", "100"],
            "lindelof": ["lindelof", str(z), "--kind", "real"],
            "balance": ["balance", str(z), "--axis", "imaginary"],
            "complete": ["complete", str(z)],
            "product-trace": ["product-trace", str(axis), "--ys", "1,3,5", "--format", "json"],
            "type": ["type", str(w), "--grid", "0:6", "--angles", "16"],
            "jint": ["jint", str(axis), "--r", "1", "--R", "10"],
            "lemma31": ["lemma31", str(axis), "--grid", "0:5"],
            "check": ["check", str(z), str(w), "--theorem", "b"],
            "dominance": ["dominance", str(axis), str(w)],
        }
        for name, args in cases.items():
            out = run(args).stdout
            validate(name, out)
            if run(args).stdout != out:
                failures.append(f"{name}: output differs between identical runs")

        validate("error", run(["measures", str(z), "--r", "5", "--R", "2"], expect=1).stderr)
        validate("error", run(["lindelof", str(tmp / "missing.json")], expect=2).stderr)

    for f in failures:
        print("FAIL", f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
