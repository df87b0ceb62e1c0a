"""Run the CLI in JSON mode and validate every document against its schema."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

exe, schema_dir, data_dir = sys.argv[1:4]


def schema(name):
    with open(os.path.join(schema_dir, name + ".schema.json")) as f:
        s = json.load(f)
    jsonschema.Draft202012Validator.check_schema(s)
    return jsonschema.Draft202012Validator(s)


runs = [
    ("spectrum", ["spectrum", "--model", "coulomb", "--extension", "-I", "--count", "3"]),
    ("spectrum", ["spectrum", "--model", "oscinv", "--a", "0.75", "--theta", "0.4,2,0.3,1", "--count", "4"]),
    ("spectrum", ["spectrum", "--model", "custom:" + os.path.join(data_dir, "oscinv_gauss.json"),
                  "--extension", "sx", "--count", "3"]),
    ("scatter", ["scatter", "--extension", "sx", "--k-steps", "5"]),
    ("sweep", ["sweep", "--model", "oscinv", "--theta-plus-range", "0,3", "--steps", "3", "--count", "2"]),
    ("verify", ["verify", "--checks", "friedrichs,unitarity"]),
]

failures = 0
with tempfile.TemporaryDirectory() as tmp:
    for i, (kind, args) in enumerate(runs):
        out = os.path.join(tmp, f"{i}.json")
        extra = [] if kind == "verify" else ["--format", "json"]
        subprocess.run([exe, *args, *extra, "--output", out], check=True)
        with open(out) as f:
            doc = json.load(f)
        errors = list(schema(kind).iter_errors(doc))
        for e in errors:
            print(f"{kind} {args}: {e.message}")
        failures += bool(errors)
        print(("ok   " if not errors else "FAIL ") + " ".join(args))

for name in sorted(os.listdir(data_dir)):
    if name.endswith(".json"):
        with open(os.path.join(data_dir, name)) as f:
            doc = json.load(f)
        errors = list(schema("custom").iter_errors(doc))
        failures += bool(errors)
        print(("ok   " if not errors else "FAIL ") + "descriptor " + name)

sys.exit(1 if failures else 0)
