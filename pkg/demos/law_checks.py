"""Run the randomized law suites at demo scale and print the reports.

Run:  python3 demos/law_checks.py [seed]
"""

import json
import sys

from probproc.harness import GenConfig, run_checks

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
cfg = GenConfig(alphabet_size=2, max_depth=3, seed=seed)
reports = run_checks(cfg, n_samples=40)
for name, report in reports.items():
    status = "ok" if report.ok else "FAILED"
    print(f"{name:18s} {report.passes}/{report.samples} {status} "
          f"({report.elapsed_seconds:.1f}s)")
if not all(r.ok for r in reports.values()):
    print(json.dumps({n: r.to_dict() for n, r in reports.items() if not r.ok}, indent=2))
    sys.exit(1)
