#!/usr/bin/env python3
"""Run the full certificate suite and print the report.

Usage: python scripts/run_verify_all.py [seed] [samples]
"""

import sys

from dphecke.cli import main

if __name__ == "__main__":
    argv = ["verify-all"]
    if len(sys.argv) > 1:
        argv = ["--seed", sys.argv[1]] + argv
    if len(sys.argv) > 2:
        argv = ["--samples", sys.argv[2]] + argv
    sys.exit(main(argv))
