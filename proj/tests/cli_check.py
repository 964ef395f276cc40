#!/usr/bin/env python3
"""CLI round trip: golden byte comparison, report schema, exit codes, thread determinism."""
import argparse
import json
import os
import re
import subprocess
import sys
from pathlib import Path

import jsonschema

ROOT = Path(__file__).resolve().parent.parent

# (config or None, args, expected exit code, golden)
CASES = [
    ("a2_symplectic", ["validate"], 0, True),
    ("a2_symplectic", ["series", "--kind", "orientifold", "--theta", "plus", "--bound", "2"], 0, True),
    ("a2_symplectic", ["series", "--kind", "orientifold", "--theta", "minus", "--bound", "4"], 0, True),
    ("a2_symplectic", ["series", "--kind", "semistable", "--theta", "plus", "--bound", "3"], 0, True),
    ("a2_symplectic", ["series", "--kind", "total", "--bound", "2"], 0, True),
    ("a2_orthogonal", ["series", "--kind", "orientifold", "--theta", "plus", "--bound", "4"], 0, True),
    ("a2_symplectic", ["wallcross", "--theta", "plus", "--theta", "minus", "--bound", "4"], 0, True),
    ("a2_orthogonal", ["wallcross", "--theta", "plus", "--theta", "minus", "--bound", "4"], 0, True),
    ("a2_symplectic", ["factorize", "--theta", "plus", "--bound", "4", "--orientifold"], 0, True),
    ("a2_orthogonal", ["factorize", "--theta", "plus", "--bound", "4", "--orientifold"], 0, True),
    ("a2_symplectic", ["factorize", "--theta", "minus", "--bound", "4"], 0, True),
    ("a4_symplectic", ["factorize", "--theta", "plus", "--bound", "4", "--orientifold"], 0, True),
    ("kronecker2", ["oracle", "--theta", "plus", "--prime", "3", "--dim", "1,1", "--census"], 0, True),
    ("kronecker2", ["oracle", "--theta", "plus", "--prime", "3", "--dim", "2,2"], 0, True),
    ("a2_symplectic", ["oracle", "--theta", "plus", "--prime", "5", "--dim", "1,1", "--ordinary"], 0, True),
    ("a3_orthogonal", ["oracle", "--theta", "plus", "--prime", "3", "--dim", "1,2,1"], 0, True),
    (None, ["dilog", "--identity", "pentagon", "--bound", "4"], 0, True),
    (None, ["dilog", "--identity", "a2-orthogonal", "--bound", "4"], 0, True),
    (None, ["dilog", "--identity", "a2-symplectic", "--bound", "4"], 0, True),
    ("a2_symplectic", ["delta", "--d", "1,0", "--e", "0,0", "--theta", "plus"], 0, True),
    ("a2_orthogonal", ["delta", "--d", "1,0", "--e", "0,0", "--theta", "plus"], 0, True),
    ("kronecker2", ["factorize", "--theta", "plus", "--bound", "2", "--orientifold"], 1, False),
    ("kronecker3", ["oracle", "--theta", "plus", "--prime", "5", "--dim", "3,3"], 3, False),
    ("a2_symplectic", ["oracle", "--theta", "plus", "--prime", "4", "--dim", "1,1"], 2, False),
    ("a2_symplectic", ["series", "--kind", "orientifold", "--theta", "nosuch"], 2, False),
    ("a2_symplectic", ["oracle", "--theta", "plus", "--prime", "17", "--dim", "1,1"], 2, False),
]


def run(binary, config, args, golden=None, threads=None):
    cmd = [binary]
    if config:
        cmd += ["--config", str(ROOT / "configs" / f"{config}.json")]
    if golden:
        cmd += ["--golden", str(golden)]
    cmd += args
    env = dict(os.environ)
    env.pop("ORIDT_CACHE", None)
    if threads:
        env["OMP_NUM_THREADS"] = str(threads)
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("binary")
    ap.add_argument("--update", action="store_true", help="rewrite golden files")
    opts = ap.parse_args()
    golden = ROOT / "tests" / "golden"
    report_schema = json.loads((ROOT / "schema" / "report.schema.json").read_text())
    config_schema = json.loads((ROOT / "schema" / "config.schema.json").read_text())
    failures = []

    for path in sorted((ROOT / "configs").glob("*.json")):
        try:
            jsonschema.validate(json.loads(path.read_text()), config_schema)
        except jsonschema.ValidationError as e:
            failures.append(f"{path.name}: config schema: {e.message}")

    for config, args, code, use_golden in CASES:
        label = f"{config or 'builtin'} {' '.join(args)}"
        r = run(opts.binary, config, args, threads=1)
        if r.returncode != code:
            failures.append(f"{label}: exit {r.returncode}, expected {code}\n{r.stderr}")
            continue
        try:
            jsonschema.validate(json.loads(r.stdout), report_schema)
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            failures.append(f"{label}: report schema: {e}")
        r4 = run(opts.binary, config, args, threads=4)
        if r4.stdout != r.stdout:
            failures.append(f"{label}: output differs between 1 and 4 threads")
        if not use_golden:
            continue
        if opts.update:
            # the CLI names the file; recover it from the mismatch message
            g = run(opts.binary, config, args, golden=golden)
            m = re.search(r"golden (?:file|mismatch against) (\S+)", g.stderr)
            if m:
                Path(m.group(1)).write_text(r.stdout)
            continue
        g = run(opts.binary, config, args, golden=golden)
        if g.returncode != code:
            failures.append(f"{label}: golden comparison failed\n{g.stderr}")

    for f in failures:
        print("FAIL", f)
    print(f"{len(CASES)} CLI cases, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
