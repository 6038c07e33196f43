"""Aggregation pipeline: per-dimension verdicts over a range, known-tilings
registry, certificate store, summaries and report emission.

classify_range walks n = 1..n_max in ascending order so the divisor
recursion always sees complete verdicts for the smaller dimensions it can
reach (every reachable n' satisfies n' < n, so one pass is a fixpoint).
Unknown is the default: the pipeline never guesses existence, it only
accepts registry entries, verified certificates, and the trivial dimension.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .criteria import (
    CRITERION_ORDER,
    CriterionOutcome,
    VerdictStatus,
    evaluate_all,
)
from .splitting import QuasiCrossShape, Splitting, from_json_line, to_json_line, verify_splitting

__all__ = [
    "ClassificationRun",
    "ContradictionError",
    "Registry",
    "Summary",
    "TilesSource",
    "Verdict",
    "classify_range",
    "default_certificates_path",
    "default_registry",
    "default_registry_path",
    "load_certificates",
    "load_registry",
    "report_csv",
    "report_json",
    "report_text",
    "store_certificate",
    "summarize",
    "witness_text",
]


class TilesSource(Enum):
    TRIVIAL = "trivial"
    REGISTRY = "registry"
    CERTIFICATE = "certificate"


@dataclass(frozen=True)
class Verdict:
    n: int
    q: int
    status: VerdictStatus
    source: TilesSource | None = None
    criterion_id: str | None = None
    witness: dict | None = None


@dataclass(frozen=True)
class Registry:
    """Externally supplied dimensions with known tilings for one shape."""

    k_plus: int
    k_minus: int
    dimensions: tuple[int, ...]
    source: str = ""

    def __post_init__(self):
        dims = tuple(sorted(self.dimensions))
        if len(set(dims)) != len(dims):
            raise ValueError("registry dimensions must be distinct")
        if dims and dims[0] < 1:
            raise ValueError("registry dimensions must be >= 1")
        object.__setattr__(self, "dimensions", dims)


class ContradictionError(RuntimeError):
    """A dimension with tiling evidence was simultaneously ruled out."""

    def __init__(self, n: int, tiles_source: TilesSource, outcome: CriterionOutcome):
        self.n = n
        self.tiles_source = tiles_source
        self.outcome = outcome
        super().__init__(
            f"dimension {n}: tiling evidence ({tiles_source.value}) contradicts "
            f"criterion {outcome.criterion_id} firing with witness {outcome.witness}"
        )


def load_registry(path) -> Registry:
    """Read a registry file: {"k_plus", "k_minus", "dimensions", "source"}."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ValueError(f"registry {path}: expected a JSON object")
    missing = [k for k in ("k_plus", "k_minus", "dimensions") if k not in obj]
    if missing:
        raise ValueError(f"registry {path}: missing fields: {', '.join(missing)}")
    dims = obj["dimensions"]
    if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
        raise ValueError(f"registry {path}: dimensions must be a list of integers")
    return Registry(obj["k_plus"], obj["k_minus"], tuple(dims), obj.get("source", ""))


def default_registry_path(k_plus: int, k_minus: int) -> Path | None:
    """Packaged registry file for a shape, if one ships with the library."""
    ref = resources.files("quasicross").joinpath("data", f"registry_{k_plus}_{k_minus}.json")
    return Path(str(ref)) if ref.is_file() else None


def default_registry(k_plus: int, k_minus: int) -> Registry | None:
    path = default_registry_path(k_plus, k_minus)
    return load_registry(path) if path is not None else None


def default_certificates_path() -> Path:
    """Certificate store shipped with the library."""
    return Path(str(resources.files("quasicross").joinpath("data", "certificates.jsonl")))


def load_certificates(path) -> tuple[Splitting, ...]:
    """Read a JSON-lines certificate store, verifying every entry.

    A certificate that fails verification is a hard error naming the first
    collision (or other defect), as is any malformed line.
    """
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                cert = from_json_line(line)
            except ValueError as exc:
                raise ValueError(f"{path}, line {lineno}: {exc}") from exc
            check = verify_splitting(cert)
            if not check:
                raise ValueError(
                    f"{path}, line {lineno}: certificate q={cert.q} does not verify: {check.reason}"
                )
            out.append(cert)
    return tuple(out)


def store_certificate(splitting: Splitting, path) -> bool:
    """Append a verified certificate, skipping exact duplicates.

    Returns True when a line was written, False when the certificate was
    already present.  Refuses to store anything that fails verification.
    """
    check = verify_splitting(splitting)
    if not check:
        raise ValueError(f"refusing to store unverified splitting: {check.reason}")
    key = (splitting.q, splitting.k_plus, splitting.k_minus, splitting.splitters)
    path = Path(path)
    if path.exists():
        for existing in load_certificates(path):
            if (existing.q, existing.k_plus, existing.k_minus, existing.splitters) == key:
                return False
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(to_json_line(splitting) + "\n")
    return True


@dataclass(frozen=True)
class ClassificationRun:
    """Verdicts for n = 1..n_max plus the full per-criterion outcome table
    (all criteria evaluated at every n, independent of attribution)."""

    k_plus: int
    k_minus: int
    n_max: int
    verdicts: tuple[Verdict, ...]
    outcomes: dict[int, tuple[CriterionOutcome, ...]]


def classify_range(
    k_plus: int,
    k_minus: int,
    n_max: int,
    registry: Registry | None = None,
    certificates: Sequence[Splitting] = (),
) -> ClassificationRun:
    """Classify every dimension 1..n_max for one shape.

    Dimension 1 always tiles (S = {1} splits trivially).  A registry or
    certificate hit yields Tiles; otherwise the first ruling criterion (in
    reporting order) yields NoTiling; otherwise Unknown.  All criteria are
    evaluated at every dimension, both for firing statistics and so that a
    criterion firing at a dimension with tiling evidence aborts the run as a
    contradiction.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if registry is not None and (registry.k_plus, registry.k_minus) != (k_plus, k_minus):
        raise ValueError(
            f"registry is for shape ({registry.k_plus},{registry.k_minus}), "
            f"classifying ({k_plus},{k_minus})"
        )
    registry_dims = set(registry.dimensions) if registry is not None else set()
    cert_dims: dict[int, Splitting] = {}
    for cert in certificates:
        if (cert.k_plus, cert.k_minus) != (k_plus, k_minus):
            continue
        check = verify_splitting(cert)
        if not check:
            raise ValueError(f"certificate q={cert.q} does not verify: {check.reason}")
        cert_dims.setdefault(cert.dimension, cert)

    oracle: dict[int, VerdictStatus] = {}
    verdicts: list[Verdict] = []
    outcomes: dict[int, tuple[CriterionOutcome, ...]] = {}
    for n in range(1, n_max + 1):
        shape = QuasiCrossShape(k_plus, k_minus, n)
        outs = evaluate_all(shape, oracle)
        outcomes[n] = outs
        fired = next((o for o in outs if o.fired), None)
        if n == 1:
            tiles_source = TilesSource.TRIVIAL
        elif n in registry_dims:
            tiles_source = TilesSource.REGISTRY
        elif n in cert_dims:
            tiles_source = TilesSource.CERTIFICATE
        else:
            tiles_source = None
        if tiles_source is not None:
            if fired is not None:
                raise ContradictionError(n, tiles_source, fired)
            verdict = Verdict(n, shape.group_order, VerdictStatus.TILES, source=tiles_source)
        elif fired is not None:
            verdict = Verdict(
                n,
                shape.group_order,
                VerdictStatus.NO_TILING,
                criterion_id=fired.criterion_id,
                witness=fired.witness,
            )
        else:
            verdict = Verdict(n, shape.group_order, VerdictStatus.UNKNOWN)
        verdicts.append(verdict)
        oracle[n] = verdict.status
    return ClassificationRun(k_plus, k_minus, n_max, tuple(verdicts), outcomes)


@dataclass(frozen=True)
class Summary:
    k_plus: int
    k_minus: int
    n_max: int
    status_counts: dict[str, int]
    tiles_dims: tuple[int, ...]
    unknown_dims: tuple[int, ...]
    first_fired: dict[str, int]
    independent_fired: dict[str, int]
    sanity_lines: tuple[str, ...]

    def to_text(self) -> str:
        lines = [
            f"shape ({self.k_plus},{self.k_minus}), dimensions 1..{self.n_max}",
            "status counts: "
            + " ".join(f"{k}={v}" for k, v in self.status_counts.items()),
            "tiles: " + (" ".join(map(str, self.tiles_dims)) or "(none)"),
            "unknown: " + (" ".join(map(str, self.unknown_dims)) or "(none)"),
            "criterion            fired  first-attributed",
        ]
        for cid in CRITERION_ORDER:
            lines.append(
                f"  {cid:<18} {self.independent_fired[cid]:>6} {self.first_fired[cid]:>6}"
            )
        lines.extend(self.sanity_lines)
        return "\n".join(lines) + "\n"


def summarize(run: ClassificationRun) -> Summary:
    """Status counts, per-criterion firing statistics (independent of the
    first-fired attribution), and residue-class sanity lines."""
    if not run.verdicts:
        raise ValueError("nothing to summarize")
    status_counts = {"tiles": 0, "no_tiling": 0, "unknown": 0}
    for v in run.verdicts:
        status_counts[v.status.value] += 1
    tiles_dims = tuple(v.n for v in run.verdicts if v.status is VerdictStatus.TILES)
    unknown_dims = tuple(v.n for v in run.verdicts if v.status is VerdictStatus.UNKNOWN)
    first_fired = {cid: 0 for cid in CRITERION_ORDER}
    for v in run.verdicts:
        if v.status is VerdictStatus.NO_TILING:
            first_fired[v.criterion_id] += 1
    independent = {cid: 0 for cid in CRITERION_ORDER}
    for outs in run.outcomes.values():
        for o in outs:
            if o.fired:
                independent[o.criterion_id] += 1

    mod3_dims = [v for v in run.verdicts if v.n >= 2 and v.n % 3 == 2]
    mod3_ruled = sum(1 for v in mod3_dims if v.status is VerdictStatus.NO_TILING)
    survivors = sorted({v.n % 36 for v in run.verdicts if v.n >= 2 and v.status is not VerdictStatus.NO_TILING})
    sanity = (
        f"n = 2 (mod 3), n >= 2: {mod3_ruled}/{len(mod3_dims)} ruled out",
        "surviving residues mod 36 (n >= 2): "
        + (" ".join(map(str, survivors)) if survivors else "(none)"),
    )
    return Summary(
        run.k_plus,
        run.k_minus,
        run.n_max,
        status_counts,
        tiles_dims,
        unknown_dims,
        first_fired,
        independent,
        sanity,
    )


def witness_text(witness: dict | None) -> str:
    """Compact deterministic rendering of a witness: k=v pairs, lists joined by +."""
    if not witness:
        return ""
    parts = []
    for k, v in witness.items():
        if isinstance(v, (tuple, list)):
            parts.append(f"{k}=" + "+".join(str(x) for x in v))
        else:
            parts.append(f"{k}={v}")
    return " ".join(parts)


def _rows(run: ClassificationRun) -> Iterable[tuple[int, int, str, str, str]]:
    for v in run.verdicts:
        if v.status is VerdictStatus.TILES:
            yield v.n, v.q, "tiles", "", v.source.value
        elif v.status is VerdictStatus.NO_TILING:
            yield v.n, v.q, "no_tiling", v.criterion_id, witness_text(v.witness)
        else:
            yield v.n, v.q, "unknown", "", ""


def report_csv(run: ClassificationRun) -> str:
    """CSV report, one row per dimension, ordered by n (byte-stable)."""
    lines = ["n,q,status,criterion,witness"]
    for n, q, status, criterion, witness in _rows(run):
        lines.append(f"{n},{q},{status},{criterion},{witness}")
    return "\n".join(lines) + "\n"


def report_json(run: ClassificationRun) -> str:
    """JSON array report ordered by n (byte-stable)."""
    items = []
    for v in run.verdicts:
        items.append(
            {
                "n": v.n,
                "q": v.q,
                "status": v.status.value,
                "source": v.source.value if v.source is not None else None,
                "criterion": v.criterion_id,
                "witness": v.witness,
            }
        )
    return json.dumps(items, separators=(",", ":")) + "\n"


def report_text(run: ClassificationRun) -> str:
    """Aligned-column text report ordered by n (byte-stable)."""
    rows = list(_rows(run))
    wn = max(len("n"), *(len(str(r[0])) for r in rows))
    wq = max(len("q"), *(len(str(r[1])) for r in rows))
    ws = max(len("status"), *(len(r[2]) for r in rows))
    wc = max(len("criterion"), *(len(r[3]) for r in rows))
    lines = [f"{'n':>{wn}} {'q':>{wq}} {'status':<{ws}} {'criterion':<{wc}} witness"]
    for n, q, status, criterion, witness in rows:
        lines.append(f"{n:>{wn}} {q:>{wq}} {status:<{ws}} {criterion:<{wc}} {witness}".rstrip())
    return "\n".join(lines) + "\n"
