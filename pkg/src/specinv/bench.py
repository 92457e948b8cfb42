"""Benchmark harness: warmed-up, repeated pipeline timing.

Reports throughput in kHz (output samples per millisecond) and the
real-time factor.  The default protocol matches the reference experiment:
a 10 s clip at 22050 Hz, 10 warm-up runs, 100 timed runs, synthesis only
(the spectrogram is prepared outside the timed region).  The clock is
injectable so the report arithmetic is unit-testable without real timing.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidConfigError, InvalidInputError, MeasurementError
from .signal import FrameConfig, Waveform
from .vocoder import ClipMode, analyze, synthesize

__all__ = [
    "STAGES",
    "BenchSpec",
    "BenchReport",
    "run_bench",
    "make_tone",
    "format_table",
    "to_jsonl",
]

STAGES = ("synthesize_only", "analyze_only", "roundtrip")

TSV_COLUMNS = ("pipeline", "win", "hop", "clip", "khz", "rtf", "mean_s", "std_s")


@dataclass(frozen=True)
class BenchSpec:
    """What to measure: a pipeline plus the timing protocol around it."""

    kind: str
    config: FrameConfig
    clip: ClipMode = field(default_factory=ClipMode)
    clip_duration: float = 10.0
    sample_rate: int = 22050
    runs: int = 100
    warmup_runs: int = 10
    stage: str = "synthesize_only"
    workers: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise InvalidConfigError("runs must be >= 1")
        if self.warmup_runs < 0:
            raise InvalidConfigError("warmup_runs must be >= 0")
        if self.clip_duration <= 0:
            raise InvalidConfigError("clip_duration must be positive")
        if self.sample_rate <= 0:
            raise InvalidConfigError("sample_rate must be positive")
        if self.stage not in STAGES:
            raise InvalidConfigError(
                f"unknown stage {self.stage!r}; expected one of {STAGES}"
            )
        if self.workers < 1:
            raise InvalidConfigError("workers must be >= 1")


@dataclass(frozen=True)
class BenchReport:
    """Timing statistics and derived throughput for one configuration.

    ``khz = samples_generated / mean_seconds / 1000`` and
    ``rtf = khz * 1000 / sample_rate`` by construction.
    """

    mean_seconds: float
    stddev_seconds: float
    samples_generated: int
    khz: float
    rtf: float
    spec: BenchSpec

    def to_dict(self) -> dict:
        return {
            "pipeline": self.spec.kind,
            "win": self.spec.config.win_length,
            "hop": self.spec.config.hop_length,
            "window": self.spec.config.window.label(),
            "clip": self.spec.clip.label(),
            "khz": self.khz,
            "rtf": self.rtf,
            "mean_s": self.mean_seconds,
            "std_s": self.stddev_seconds,
            "samples": self.samples_generated,
            "sample_rate": self.spec.sample_rate,
            "stage": self.spec.stage,
            "runs": self.spec.runs,
            "warmup_runs": self.spec.warmup_runs,
            "workers": self.spec.workers,
        }

    def tsv_row(self) -> str:
        """The stable tab-separated stdout row (see TSV_COLUMNS)."""
        return "\t".join(
            [
                self.spec.kind,
                str(self.spec.config.win_length),
                str(self.spec.config.hop_length),
                self.spec.clip.label(),
                f"{self.khz:.1f}",
                f"{self.rtf:.1f}",
                f"{self.mean_seconds:.6g}",
                f"{self.stddev_seconds:.6g}",
            ]
        )


def make_tone(duration: float, sample_rate: int) -> Waveform:
    """Deterministic 440 Hz test tone used when no input clip is supplied."""
    t = np.arange(int(round(duration * sample_rate))) / sample_rate
    return Waveform(0.5 * np.sin(2.0 * np.pi * 440.0 * t), sample_rate)


def run_bench(spec: BenchSpec, x: Waveform | None = None, clock=time.perf_counter) -> BenchReport:
    """Execute the timing protocol for one pipeline configuration.

    Performs ``spec.warmup_runs`` untimed executions (no clock reads), then
    ``spec.runs`` timed executions of exactly the chosen stage.  For
    ``synthesize_only`` the spectrogram is computed before any timing
    starts.  The timed stage runs single-threaded unless ``spec.workers``
    says otherwise, and the setting is echoed in the report.
    """
    if x is None:
        x = make_tone(spec.clip_duration, spec.sample_rate)
    elif x.sample_rate != spec.sample_rate:
        raise InvalidInputError(
            f"input clip is at {x.sample_rate} Hz but the benchmark is declared "
            f"for {spec.sample_rate} Hz"
        )

    if spec.stage == "synthesize_only":
        gram = analyze(x, spec.config, spec.kind, spec.clip, workers=spec.workers)

        def stage():
            return synthesize(gram, workers=spec.workers)

    elif spec.stage == "analyze_only":

        def stage():
            return analyze(x, spec.config, spec.kind, spec.clip, workers=spec.workers)

    else:

        def stage():
            return synthesize(
                analyze(x, spec.config, spec.kind, spec.clip, workers=spec.workers),
                workers=spec.workers,
            )

    for _ in range(spec.warmup_runs):
        stage()

    times = np.empty(spec.runs)
    for i in range(spec.runs):
        t0 = clock()
        stage()
        times[i] = clock() - t0

    mean = float(times.mean())
    if mean <= 0.0:
        raise MeasurementError(
            f"mean elapsed time {mean} s is not positive; clock resolution too coarse?"
        )
    std = float(times.std(ddof=1)) if spec.runs > 1 else 0.0
    samples = len(x)
    khz = samples / mean / 1000.0
    rtf = khz * 1000.0 / spec.sample_rate
    return BenchReport(mean, std, samples, khz, rtf, spec)


def format_table(reports) -> str:
    """Render reports as an aligned text table (header + one row each)."""
    rows = [TSV_COLUMNS] + [tuple(r.tsv_row().split("\t")) for r in reports]
    widths = [max(len(row[c]) for row in rows) for c in range(len(TSV_COLUMNS))]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def to_jsonl(reports) -> str:
    """Render reports as line-delimited JSON records."""
    return "\n".join(json.dumps(r.to_dict(), sort_keys=True) for r in reports)
