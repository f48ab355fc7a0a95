"""
Asymptotic vs instantaneous mutual information for K=10 and K=100, N=1..3.

Writes one CSV per configuration under data/results/ and prints the worst
relative deviation between the Monte Carlo draw and the asymptotic value.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli.config_schema import load_config
from src.cli.experiment import run_experiment

PROJECT_ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR = PROJECT_ROOT / "config" / "experiments"
RESULTS_DIR = PROJECT_ROOT / "data" / "results"


def main():
    print("=" * 60)
    print("Asymptotic vs instantaneous mutual information")
    print("=" * 60)

    for antennas in (10, 100):
        for hops in (1, 2, 3):
            name = f"k{antennas}_n{hops}"
            config = load_config(str(CONFIG_DIR / f"{name}.yaml"))
            output = RESULTS_DIR / f"{name}.csv"
            result = run_experiment(config, output=str(output), fmt="csv")

            worst = max(r.relative_deviation for r in result.records)
            print(f"K={antennas:3d} N={hops}: worst relative deviation {worst:.2%} -> {output.relative_to(PROJECT_ROOT)}")

    print("\nDone")


if __name__ == "__main__":
    main()
