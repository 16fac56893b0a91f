#!/usr/bin/env python3
"""Run the invdmod command-line interface from a source checkout."""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from invdmod.cli import main  # noqa: E402

if __name__ == "__main__":
    raise SystemExit(main())
