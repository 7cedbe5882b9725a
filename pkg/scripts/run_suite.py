#!/usr/bin/env python3
"""Run the full law suite on the shipped corpus and print the report."""

import sys

from arrowlab.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite", *sys.argv[1:]]))
