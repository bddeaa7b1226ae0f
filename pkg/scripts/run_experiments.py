#!/usr/bin/env python3
"""Run the full experiment battery into results/.

For each config in scripts/configs/, emits the kernel and cardinal curves,
the three-way interpolation comparison with its error summary, the pointwise
error bound, and (for the half-rate configs) the Monte-Carlo MSE table.
Everything is seeded, so reruns reproduce the same files.
"""

import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
CONFIGS = sorted((HERE / "configs").glob("*.json"))
RESULTS = HERE.parent / "results"


def run(command, config, outdir):
    cmd = [sys.executable, "-m", "bandlim.cli", command,
           "--config", str(config), "--output-dir", str(outdir)]
    print("$", " ".join(cmd[2:]))
    proc = subprocess.run(cmd)
    if proc.returncode != 0:
        sys.exit(proc.returncode)


def main():
    if not CONFIGS:
        sys.exit("no configs found")
    for config in CONFIGS:
        outdir = RESULTS / config.stem
        outdir.mkdir(parents=True, exist_ok=True)
        for command in ("kernel", "compare", "cardinals", "bounds"):
            run(command, config, outdir)
        if "half" in config.stem:
            run("mc", config, outdir)
    print(f"\nall outputs under {RESULTS}")


if __name__ == "__main__":
    main()
