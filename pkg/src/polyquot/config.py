"""Run configuration shared by the CLI and the verification suite."""

from __future__ import annotations

import os
from dataclasses import dataclass

STRETCH_MAX_COSETS = 6 * 10**6


@dataclass
class RunConfig:
    max_cosets: int = 10**6
    subgroup_order_bound: int = 10**4
    stretch: bool = False
    output_format: str = "text"  # text | json | dot
    output_path: str | None = None

    def __post_init__(self):
        env = os.environ.get("POLYQUOT_MAX_COSETS")
        if env:
            self.max_cosets = int(env)
        if self.max_cosets < 1 or self.subgroup_order_bound < 1:
            raise ValueError("resource bounds must be positive")
        if self.stretch and self.max_cosets < STRETCH_MAX_COSETS:
            self.max_cosets = STRETCH_MAX_COSETS
