"""Runs the CLI with --format json and validates each report against the schema."""

import json
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path, data = sys.argv[1], sys.argv[2], sys.argv[3]
    with open(schema_path) as f:
        schema = json.load(f)
    runs = [
        (["gallery", "--seed", "7"], 0),
        (["check", "--functional", f"{data}/sqrt_gap.json"], 1),
        (["check", "--functional", f"{data}/truncated.json"], 2),
        (["extend", "--partial", f"{data}/partial_empty.json", "--target", "1,0"], 0),
        (["openness", "--operator", f"{data}/clamp.json", "--at", "2,4", "--epsilon", "1", "--delta", "0.1"], 1),
        (["compact", "--sequence", f"{data}/oscillating.json", "--timing"], 0),
    ]
    failures = 0
    for args, code in runs:
        proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
        try:
            jsonschema.validate(json.loads(proc.stdout), schema)
            ok = proc.returncode == code
            detail = f"exit {proc.returncode}"
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            ok, detail = False, str(e).splitlines()[0]
        print(f"{'PASS' if ok else 'FAIL'} {' '.join(args)}: {detail}")
        failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
