"""Regenerate golden/optima.txt from the brute-force oracle.

Usage: python3 tools/golden.py > golden/optima.txt
"""
import sys

from betacuts.instances import LabsParams, gen_labs, linearize
from betacuts.oracle import brute_force_optimum

INSTANCES = [(20, 5), (25, 6)]


def main():
    print("# generated by: python3 tools/golden.py > golden/optima.txt")
    for N, R in INSTANCES:
        params = LabsParams(N, R)
        value, _ = brute_force_optimum(linearize(gen_labs(params), params.name))
        print(f"{params.name}: optimum {value}")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
