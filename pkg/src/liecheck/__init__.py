"""Exact verification of root-system constructions, model representations and tame-estimate bookkeeping."""

from __future__ import annotations

__version__ = "0.1.0"
