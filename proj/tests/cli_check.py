"""Runs the CLI and checks its exit code and output.

usage: cli_check.py EXIT_CODE REGEX -- COMMAND...
"""
import re
import subprocess
import sys


def main():
    sep = sys.argv.index("--")
    code, pattern = int(sys.argv[1]), sys.argv[2]
    cmd = sys.argv[sep + 1:]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    out = proc.stdout + proc.stderr
    sys.stdout.write(out)
    if proc.returncode != code:
        print(f"expected exit {code}, got {proc.returncode}")
        return 1
    if not re.search(pattern, out, re.MULTILINE):
        print(f"output does not match {pattern!r}")
        return 1
    lines = [l for l in proc.stderr.splitlines() if l.strip()]
    if code != 0 and len(lines) != 1:
        print("diagnostic is not a single line")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
