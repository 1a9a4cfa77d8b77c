#!/usr/bin/env python3
"""Run the CLI over the corpus and validate every JSON report against the schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, corpus, schema_path = sys.argv[1], pathlib.Path(sys.argv[2]), sys.argv[3]
schema = json.load(open(schema_path))
validator = jsonschema.Draft202012Validator(schema)

runs = [["cantor"], ["cantor", "--n", "1"], ["laws", "--seed", "3"]]
for f in sorted(corpus.glob("*.tcc")):
    runs.append(["verify", "--instance", str(f)])
    # each check line becomes its own run too
    for line in f.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line.startswith("check ") and "{ run " in line:
            body = line.split("{ run ", 1)[1].rsplit(" expect ", 1)[0].split()
            runs.append(body + ["--instance", str(f)])
runs.append(["nogo", "ns.s", "ns.phi", "--max-candidates", "3", "--instance", str(corpus / "nogo_spin.tcc")])

bad = 0
for args in runs:
    p = subprocess.run([cli] + args, capture_output=True, text=True)
    if p.returncode not in (0, 3):
        print("exit", p.returncode, args, p.stderr.strip())
        bad += 1
        continue
    try:
        report = json.loads(p.stdout)
    except json.JSONDecodeError as e:
        print("not json:", args, e)
        bad += 1
        continue
    errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
    for e in errors:
        print("schema:", args, list(e.path), e.message)
    bad += bool(errors)
    if (p.returncode == 3) != (report["verdict"] == "budget-exceeded"):
        print("exit code and verdict disagree:", args)
        bad += 1
print(f"{len(runs)} reports, {bad} invalid")
sys.exit(1 if bad else 0)
