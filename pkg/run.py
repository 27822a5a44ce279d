#!/usr/bin/env python3
"""
Cross-platform launcher for BCS Spin Entanglement

Forwards all arguments to the command line, e.g.
    python run.py spectrum --grid -5:5:101
"""

import sys

from bcs_spin_entanglement.main import main

if __name__ == "__main__":
    sys.exit(main())
