"""Bundled data files.

The only file shipped here is a synthetic 20-point heavy-tailed data set
shaped like monthly overflow volumes (in millions of cubic metres).  It is
generated from a seeded Pareto(2) draw and is NOT the Statistics Canada
combined-sewer-overflow data; it exists so the estimation pipeline can be
exercised end to end without external inputs.
"""

from importlib import resources
from pathlib import Path


def synthetic_overflow_path() -> Path:
    """Filesystem path of the bundled synthetic overflow fixture."""
    return Path(str(resources.files(__package__) / "synthetic_overflow_m20.csv"))
