"""
Bundled verification suites
============================

Every structural property the library relies on — asymptotic laws,
center closed forms, symmetry invariance, the Einstein identity, the
boundary limit and the region decomposition — is packaged as a named
suite returning a machine-readable pass/fail report.  The same checks
back the `tubeke verify` subcommand.
"""

import json

from tubeke import SUITE_NAMES, TubeParams, run_suite, solve_potential

params = TubeParams(p=2)
sol = solve_potential(params)

# --- one suite in detail -------------------------------------------------

report = run_suite("origin", params, sol, seed=0)
for line in report.lines():
    print(line)

# --- everything at once --------------------------------------------------

print(f"\navailable suites: {', '.join(SUITE_NAMES)}")
full = run_suite("all", params, sol, seed=0)
n_pass = sum(c.passed for c in full.checks)
print(f"suite 'all' for p=2: {n_pass}/{len(full.checks)} checks pass, "
      f"overall {'PASS' if full.overall else 'FAIL'}")

# Reports serialize to plain JSON — the shape the CLI writes with
# `tubeke verify --p 2 --report out.json`.
blob = json.dumps(full.to_dict())
print(f"JSON report: {len(blob)} bytes, keys {sorted(full.to_dict())}")
