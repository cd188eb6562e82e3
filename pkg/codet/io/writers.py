"""Headered JSON Lines output.

The first line of every output file is a provenance header naming the tool,
its version, the command and the hash of the resolved settings.
"""

import json
from pathlib import Path
from typing import Any, Iterable

from codet import __version__

TOOL_NAME = "codet"


def header(command: str, config_hash: str) -> dict[str, str]:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "config_hash": config_hash,
    }


def render_jsonl(command: str, config_hash: str, records: Iterable[dict[str, Any]]) -> str:
    """Header line plus one compact JSON object per record, each newline-terminated."""
    lines = [header(command, config_hash), *records]
    return "".join(json.dumps(line, separators=(",", ":"), allow_nan=False) + "\n" for line in lines)


def write_jsonl(
    path: Path, command: str, config_hash: str, records: Iterable[dict[str, Any]]
) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(render_jsonl(command, config_hash, records))
