"""Run verification suites and write their results as JSON.

    python3 scripts/run_suites.py all --out results.json
    python3 scripts/run_suites.py covers --manifest manifest.json
"""
import argparse
import json
import sys

from thetaspace import suites


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("suite", nargs="?", default="all", choices=sorted(suites.SUITES))
    p.add_argument("--manifest", help="manifest file with a suite configuration")
    p.add_argument("--out", help="where to write the JSON results")
    args = p.parse_args()
    cfg = None
    if args.manifest:
        with open(args.manifest, encoding="utf-8") as fh:
            cfg = suites.load_config(fh.read())
    cfg = cfg or suites.SuiteConfig()
    results = []
    for i in suites.SUITES[args.suite]:
        r = suites.CRITERIA[i](cfg)
        print(r.line(), flush=True)
        results.append(r.to_json())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"manifest": suites.manifest(cfg), "results": results}, fh, indent=1,
                      sort_keys=True, default=str)
    return 0 if all(r["ok"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
