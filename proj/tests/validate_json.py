"""Validates --json CLI output and shipped files against the schemas in docs/.

usage: validate_json.py CLI DOCS_DIR WORK_DIR
"""
import json
import os
import subprocess
import sys

import jsonschema


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    cli, docs, work = sys.argv[1:4]
    os.makedirs(work, exist_ok=True)
    schemas = {n: load(os.path.join(docs, f"{n}.schema.json"))
               for n in ("cli_output", "table", "matrix", "connection")}
    env = dict(os.environ, PERIODS_TABLE_DIR=os.path.join(work, "tables"))
    conn = os.path.join(docs, "connections", "example.json")
    dilog = os.path.join(docs, "matrices", "dilog.json")
    table = os.path.join(work, "table-w6.json")
    commands = [
        ["--table", table, "relations", "datamine", "--weight", "6"],
        ["mzv", "reduce", "zeta(2,3)"],
        ["mzv", "coaction", "zeta(3,5)"],
        ["mzv", "coaction", "--reduced", "--unipotent", "zeta(3,5)"],
        ["mzv", "decompose", "zeta(2,3)"],
        ["mzv", "decompose", "--l-form", "zeta(2)^2"],
        ["mzv", "ud", "zeta(3,5)"],
        ["mzv", "conjugates", "zeta(3,5)"],
        ["mzv", "eval", "zeta(3)"],
        ["pm", "sv", "kummer", "2"],
        ["pm", "sv-twisted", "zeta", "3"],
        ["pm", "invariants", "--file", dilog],
        ["pm", "monodromy", "dilog", "--gamma", "1"],
        ["symbol", "check", "--file", conn],
        ["symbol", "smb", "--builtin", "example"],
        ["symbol", "cmb", "--file", conn],
        ["symbol", "li", "4"],
        ["symbol", "at-point", "li2", "--base", "1"],
    ]
    failures = 0
    seen = set()
    for args in commands:
        proc = subprocess.run([cli, "--json", *args], capture_output=True, text=True, env=env)
        try:
            if proc.returncode != 0:
                raise ValueError(f"exit {proc.returncode}: {proc.stderr.strip()}")
            out = json.loads(proc.stdout)
            jsonschema.validate(out, schemas["cli_output"])
            seen.add(out["command"])
            print("ok", " ".join(args))
        except (ValueError, jsonschema.ValidationError) as e:
            failures += 1
            print("FAIL", " ".join(args), "->", str(e).splitlines()[0])
    missing = set(schemas["cli_output"]["properties"]["command"]["enum"]) - seen
    if missing:
        failures += 1
        print("FAIL commands not exercised:", sorted(missing))
    files = [(table, "table")]
    files += [(os.path.join(docs, "connections", f), "connection")
              for f in sorted(os.listdir(os.path.join(docs, "connections")))]
    files += [(os.path.join(docs, "matrices", f), "matrix")
              for f in sorted(os.listdir(os.path.join(docs, "matrices")))]
    for path, kind in files:
        try:
            jsonschema.validate(load(path), schemas[kind])
            print("ok", path)
        except (OSError, ValueError, jsonschema.ValidationError) as e:
            failures += 1
            print("FAIL", path, "->", str(e).splitlines()[0])
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
