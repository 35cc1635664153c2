"""Run the Ext/self-injectivity battery and print one line per record.

    python scripts/run_battery.py [config.json] [--json]

The optional config holds BatteryConfig fields (groups, primes, degree,
modules, order_cap, resolution_cap).
"""
import argparse
import json
import sys
from pathlib import Path

from mackeyalg.fdalg.battery import BatteryConfig, run_battery


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("config", nargs="?")
    ap.add_argument("--json", action="store_true", help="emit JSON records")
    args = ap.parse_args(argv)
    cfg = BatteryConfig.from_json(Path(args.config).read_text()) if args.config else BatteryConfig()
    records = run_battery(cfg)
    if args.json:
        json.dump([r.to_json(timestamps=False) for r in records], sys.stdout, indent=2)
        print()
    else:
        for r in records:
            mod = f" {r.module}" if r.module else ""
            p = f" p={r.p}" if r.p else ""
            flag = "ok " if r.passed else "BAD"
            print(f"{flag} {r.group:4s} {r.check}{mod}{p}: {r.value} (want {r.expected}, {r.seconds:.2f}s)")
    return 0 if all(r.passed for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
