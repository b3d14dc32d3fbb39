"""CSV persistence, checkpointed parallel range runs, reference verification.

CSV schema (one row per odd prime, ordered by q, LF endings):

    q,kappa,r,delta,gamma_plus,gamma,sg2p,sg2m,sg4p,sg4m

Reals carry 17 significant digits (lossless binary64 round-trip), booleans
are 0/1.  A run writes a sidecar checkpoint (last completed q, byte count
and digest of everything emitted) so an interrupted range resumes to a
byte-identical file; output bytes do not depend on the worker count.
"""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .ek_core import EkRecord, compute_record
from .primes import NeighborFlags, primes_in
from .reference import kappa_reference

CSV_HEADER = "q,kappa,r,delta,gamma_plus,gamma,sg2p,sg2m,sg4p,sg4m"

_REAL_FIELDS = ("kappa", "r", "delta", "gamma_plus", "gamma")


class StoreError(RuntimeError):
    """Malformed persisted data or an inconsistent checkpoint."""


def format_record(rec: EkRecord) -> str:
    reals = ",".join(f"{getattr(rec, f):.17g}" for f in _REAL_FIELDS)
    flags = rec.flags
    bits = ",".join(str(int(v)) for v in (flags.sg2p, flags.sg2m, flags.sg4p, flags.sg4m))
    return f"{rec.q},{reals},{bits}"


def parse_record(line: str, lineno: int) -> EkRecord:
    parts = line.split(",")
    if len(parts) != 10:
        raise StoreError(f"line {lineno}: expected 10 fields, got {len(parts)}")
    try:
        q = int(parts[0])
        kappa, r, delta, gamma_plus, gamma = (float(v) for v in parts[1:6])
        bits = [int(v) for v in parts[6:10]]
        if any(b not in (0, 1) for b in bits):
            raise ValueError("flag fields must be 0/1")
    except ValueError as exc:
        raise StoreError(f"line {lineno}: {exc}") from exc
    flags = NeighborFlags(*(bool(b) for b in bits))
    return EkRecord(q=q, kappa=kappa, r=r, gamma_plus=gamma_plus, gamma=gamma,
                    delta=delta, flags=flags)


def read_records(path: str | os.PathLike) -> list[EkRecord]:
    out = []
    with open(path, "r", encoding="ascii") as f:
        header = f.readline().rstrip("\n")
        if header != CSV_HEADER:
            raise StoreError(f"line 1: unexpected header {header!r}")
        for lineno, line in enumerate(f, start=2):
            line = line.rstrip("\n")
            if line:
                out.append(parse_record(line, lineno))
    if not out:
        raise StoreError("no data rows")
    return out


@dataclass(frozen=True)
class RunConfig:
    q_min: int
    q_max: int
    out_path: str
    threads: int = 1
    precision: str = "double"  # "double" | "dd"
    checkpoint_every: int = 1000

    def __post_init__(self):
        if not 3 <= self.q_min <= self.q_max:
            raise ValueError("need 3 <= q_min <= q_max")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.precision not in ("double", "dd"):
            raise ValueError("precision must be 'double' or 'dd'")
        if self.checkpoint_every < 1:
            raise ValueError("checkpoint_every must be >= 1")


def _checkpoint_path(out_path: str) -> Path:
    return Path(str(out_path) + ".checkpoint")


def _load_checkpoint(cfg: RunConfig) -> tuple[int, "hashlib._Hash"] | None:
    ck_path = _checkpoint_path(cfg.out_path)
    out = Path(cfg.out_path)
    if not ck_path.exists():
        return None
    if not out.exists():
        ck_path.unlink()
        return None
    state = json.loads(ck_path.read_text())
    with open(out, "r+b") as f:
        f.truncate(state["nbytes"])
    digest = hashlib.sha256(out.read_bytes())
    if digest.hexdigest() != state["sha256"]:
        raise StoreError(f"checkpoint digest mismatch for {cfg.out_path}")
    return state["last_q"], digest


def _write_checkpoint(cfg: RunConfig, last_q: int, nbytes: int, digest) -> None:
    ck_path = _checkpoint_path(cfg.out_path)
    tmp = ck_path.with_suffix(".tmp")
    tmp.write_text(json.dumps(
        {"last_q": last_q, "nbytes": nbytes, "sha256": digest.hexdigest()}))
    tmp.replace(ck_path)


def _worker(args) -> EkRecord:
    q, mode = args
    return compute_record(q, mode=mode)


def _records_for(primes, mode: str, threads: int):
    if threads == 1:
        for q in primes:
            yield compute_record(int(q), mode=mode)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(_worker, ((int(q), mode) for q in primes), chunksize=16)


def run_range(cfg: RunConfig) -> int:
    """Write one CSV row per odd prime in [q_min, q_max]; resumable; returns rows."""
    primes = [int(q) for q in primes_in(max(cfg.q_min - 1, 2), cfg.q_max)]
    resumed = _load_checkpoint(cfg)
    if resumed is None:
        mode = "w"
        digest = hashlib.sha256()
        header = CSV_HEADER + "\n"
        pending = [int(q) for q in primes]
        start_bytes = 0
        prefix = header
    else:
        last_q, digest = resumed
        mode = "a"
        pending = [q for q in primes if q > last_q]
        start_bytes = Path(cfg.out_path).stat().st_size
        prefix = ""
    rows = 0
    with open(cfg.out_path, mode, encoding="ascii", newline="\n") as f:
        nbytes = start_bytes
        if prefix:
            f.write(prefix)
            digest.update(prefix.encode("ascii"))
            nbytes += len(prefix)
        last_q = None
        for rec in _records_for(pending, cfg.precision, cfg.threads):
            line = format_record(rec) + "\n"
            f.write(line)
            digest.update(line.encode("ascii"))
            nbytes += len(line)
            last_q = rec.q
            rows += 1
            if rows % cfg.checkpoint_every == 0:
                f.flush()
                _write_checkpoint(cfg, last_q, nbytes, digest.copy())
    ck = _checkpoint_path(cfg.out_path)
    if ck.exists():
        ck.unlink()
    return rows


@dataclass(frozen=True)
class VerificationResult:
    max_deviation: float
    worst_q: int
    offenders: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.offenders


def verify_reference(tol: float, mode: str = "double") -> VerificationResult:
    """Recompute kappa(q) for every tabulated q < 1000 against the reference."""
    table = kappa_reference()
    worst = -1.0
    worst_q = 0
    offenders = []
    for q, ref in table.items():
        dev = abs(compute_record(q, mode=mode).kappa - ref)
        if dev > worst:
            worst, worst_q = dev, q
        if dev > tol:
            offenders.append(q)
    return VerificationResult(max_deviation=worst, worst_q=worst_q,
                              offenders=tuple(offenders))
