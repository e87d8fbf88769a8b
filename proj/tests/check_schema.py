"""Validate CLI reports against the shipped schema and check they are byte-identical across runs."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
validator = jsonschema.Draft202012Validator(schema)

with tempfile.TemporaryDirectory() as tmp:
    module = Path(tmp) / "module.json"
    module.write_text('{"q": 2, "n": 8, "matrix": [[["0x1", "0x1"]]]}')
    runs = [["curve-info", "--curve", "d=2;t=0x2"],
            ["monodromy", "--matrix", str(module), "--n-max", "8"]]
    for claim in ["lemma-3.1", "lemma-3.2", "thm-1.2-decomposable", "lemma-3.5", "lemma-3.7",
                  "group-structure", "section-2-roundtrip"]:
        runs.append(["verify", "--claim", claim, "--curve", "d=2;t=0x2", "--seed", "42"])
    runs.append(["verify", "--claim", "lemma-3.1", "--curve", "d=8;t=0x2", "--cap", "3"])

    failures = 0
    for i, args in enumerate(runs):
        outs = []
        for k in range(2):
            path = Path(tmp) / f"r{i}_{k}.json"
            code = subprocess.run([cli, *args, "--json", str(path)], capture_output=True).returncode
            if code not in (0, 1):
                print(f"FAIL {' '.join(args)}: exit {code}")
                failures += 1
            outs.append(path.read_bytes())
        report = json.loads(outs[0])
        errors = sorted(validator.iter_errors(report), key=str)
        if errors:
            print(f"FAIL {' '.join(args)}: {errors[0].message}")
            failures += 1
        if outs[0] != outs[1]:
            print(f"FAIL {' '.join(args)}: reports differ between runs")
            failures += 1
        print(f"ok   {' '.join(args)}")
    sys.exit(1 if failures else 0)
