"""Certificate search and checking for SMT formulas over nonlinear real arithmetic."""

from ._ntacert import (
    BoxStrategy,
    CertificateError,
    ParseError,
    SearchConfig,
    UnsupportedError,
    check,
    degree,
    dm_decompose,
    formula_digest,
    normalize,
    preset,
    preset_ids,
    solve,
)

__all__ = [
    "BoxStrategy",
    "CertificateError",
    "ParseError",
    "SearchConfig",
    "UnsupportedError",
    "check",
    "degree",
    "dm_decompose",
    "formula_digest",
    "normalize",
    "preset",
    "preset_ids",
    "solve",
    "solve_file",
]


def solve_file(path, config=None):
    """Solve the SMT-LIB file at `path`; returns (result, certificate JSON or None, statistics)."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return solve(text, config if config is not None else SearchConfig())
