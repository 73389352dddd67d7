#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Date: 2026/10/16
Desc: 命令行脚本，例如:
    python rank_drift.py simulate --out runs/baseline --replicates 100
    python rank_drift.py ingest --input eng-1gram-*.gz --min-volumes 500 --years 1900:2008 --out runs/eng
    python rank_drift.py analyze --input runs/eng/lexicon.csv --out runs/eng_metrics
"""

import sys

from rankDrift.cli import main

if __name__ == "__main__":
    sys.exit(main())
