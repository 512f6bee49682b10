"""Runs each subcommand once and validates its report against docs/report.schema.json."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

binary, schema_path = sys.argv[1], Path(sys.argv[2])
schema = json.loads(schema_path.read_text())
validator = jsonschema.Draft202012Validator(schema)
cert_validator = jsonschema.Draft202012Validator({**schema["$defs"]["certificate"], "$defs": schema["$defs"]})

runs = [
    ["certify", "--n", "3"],
    ["certify", "--n", "3", "--budget", "5"],
    ["certify-mod", "--n", "2", "--N", "6"],
    ["normalize", "--preset", "kassabov:3", "--poly", "x*y^2*x^2"],
    ["variant2", "--n", "2"],
    ["guralnick", "--p", "3"],
    ["relmod", "--n", "2", "--gens", "shift"],
    ["bimod", "--n", "2", "--D", "5", "--sweep"],
]
failures = 0
with tempfile.TemporaryDirectory() as tmp:
    trace = Path(tmp) / "cert.json"
    runs.append(["certify", "--n", "2", "--trace", str(trace)])
    for args in runs:
        out = subprocess.run([binary, *args], capture_output=True, text=True).stdout
        errors = list(validator.iter_errors(json.loads(out)))
        for e in errors[:3]:
            print(" ".join(args), ":", e.message)
        failures += bool(errors)
    errors = list(cert_validator.iter_errors(json.loads(trace.read_text())))
    failures += bool(errors)
    replay = subprocess.run([binary, "replay", str(trace)], capture_output=True, text=True).stdout
    failures += bool(list(validator.iter_errors(json.loads(replay))))

print(f"{len(runs) + 2 - failures}/{len(runs) + 2} documents valid")
sys.exit(1 if failures else 0)
