"""Run manifests and deterministic file output.

Rerunning a subcommand with the seed and config echoed in a manifest
reproduces the numeric output byte for byte (same backend): rows are
sorted by deterministic keys, floats printed with 17 significant digits,
and every output embeds the manifest hash in its header.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__ as _version
from ._kernels import get_backend

__all__ = ["RunManifest", "fmt_float", "write_csv", "write_jsonl"]


def fmt_float(x) -> str:
    return f"{float(x):.17g}"


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class RunManifest:
    subcommand: str
    config: dict
    seed: int
    task_seeds: list[int] = field(default_factory=list)
    tool: str = "hopfix"
    version: str = _version
    backend: str = field(default_factory=get_backend)
    wall_time_s: float | None = None
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def sha256(self) -> str:
        # wall time and task bookkeeping stay out of the hash: the hash
        # identifies the reproducible inputs
        core = {
            "tool": self.tool,
            "version": self.version,
            "subcommand": self.subcommand,
            "config": self.config,
            "seed": self.seed,
            "backend": self.backend,
        }
        return hashlib.sha256(_canonical(core).encode()).hexdigest()

    def finish(self) -> None:
        self.wall_time_s = time.perf_counter() - self._t0

    def as_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "subcommand": self.subcommand,
            "config": self.config,
            "seed": self.seed,
            "backend": self.backend,
            "task_seeds": self.task_seeds,
            "wall_time_s": self.wall_time_s,
            "manifest_sha256": self.sha256,
        }

    def write(self, out_path: str | None) -> None:
        self.finish()
        payload = json.dumps(self.as_dict(), sort_keys=True, indent=2)
        if out_path is None:
            print(payload, file=sys.stderr)
        else:
            with open(f"{out_path}.manifest.json", "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")


def _open_out(out_path):
    if out_path is None:
        return sys.stdout, False
    return open(out_path, "w", encoding="utf-8"), True


def write_csv(out_path, schema: str, manifest: RunManifest, header: list[str], rows):
    """Comma-separated table with a one-line provenance comment on top.

    Floats are rendered with 17 significant digits; rows must already be
    in deterministic order.
    """
    fh, close = _open_out(out_path)
    try:
        fh.write(f"# schema={schema} manifest_sha256={manifest.sha256}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [fmt_float(v) if isinstance(v, float) else str(v) for v in row]
            fh.write(",".join(cells) + "\n")
    finally:
        if close:
            fh.close()


def write_jsonl(out_path, schema: str, manifest: RunManifest, records):
    """JSON-lines: a header object, then one object per record."""
    fh, close = _open_out(out_path)
    try:
        fh.write(_canonical({"schema": schema, "manifest_sha256": manifest.sha256}) + "\n")
        for rec in records:
            fh.write(_canonical(rec) + "\n")
    finally:
        if close:
            fh.close()
