"""Orthonormal two-channel filter pairs.

Everything in this package is driven by a single real scaling (lowpass)
filter g of even length L. Its wavelet (highpass) companion is fixed by
the alternating flip

    h[n] = (-1)^n * g[L-1-n],

and the pair (g, h) forms a perfect-reconstruction orthonormal filter
bank whenever g satisfies

    sum_n g[n]              = sqrt(2)           (DC gain),
    sum_n g[n] * g[n+2k]    = delta(k)          (double-shift orthonormality).

Two consequences follow and are checked alongside: sum_n h[n] = 0 and
sum_n g[n] * h[n+2k] = 0 for every k.

Builtins cover the 2-tap Haar filter and the 4-tap Daubechies filter
(two vanishing moments); arbitrary user-supplied scaling coefficients
are accepted after numeric validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotOrthonormal, OddLength, UnknownWavelet

__all__ = [
    "FilterPair",
    "ConstraintViolation",
    "make_wavelet_system",
    "derive_wavelet_filter",
    "check_orthonormality",
    "builtin_names",
    "parse_coefficients_csv",
    "format_coefficients_csv",
]

_SQRT2 = np.sqrt(2.0)

#: Validation tolerance for user-supplied coefficients.
DEFAULT_TOLERANCE = 1e-10


def derive_wavelet_filter(g: np.ndarray) -> np.ndarray:
    """Return the alternating-flip highpass companion of a lowpass filter.

    h[n] = (-1)^n * g[L-1-n]; raises OddLength unless len(g) is even.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size < 2 or g.size % 2:
        raise OddLength(f"scaling filter must be 1-D with even length >= 2, got shape {g.shape}")
    signs = np.where(np.arange(g.size) % 2 == 0, 1.0, -1.0)
    return signs * g[::-1]


@dataclass(frozen=True)
class FilterPair:
    """An orthonormal scaling/wavelet filter pair.

    Immutable after construction; instances may be shared freely between
    threads. Use :func:`make_wavelet_system` to obtain a validated pair.
    """

    name: str
    g: np.ndarray
    h: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", np.asarray(self.g, dtype=float))
        object.__setattr__(self, "h", np.asarray(self.h, dtype=float))

    @classmethod
    def from_scaling(cls, name: str, g: np.ndarray) -> "FilterPair":
        """Build a pair from scaling coefficients without validating them."""
        g = np.asarray(g, dtype=float)
        return cls(name=name, g=g, h=derive_wavelet_filter(g))

    def __len__(self) -> int:
        return self.g.size


@dataclass(frozen=True)
class ConstraintViolation:
    """One violated filter constraint and the size of the violation."""

    constraint: str
    residual: float


def _haar() -> np.ndarray:
    return np.array([1.0, 1.0]) / _SQRT2


def _db4() -> np.ndarray:
    # 4-tap Daubechies filter: orthonormal with two vanishing moments.
    s3 = np.sqrt(3.0)
    return np.array([1.0 + s3, 3.0 + s3, 3.0 - s3, 1.0 - s3]) / (4.0 * _SQRT2)


_BUILTINS = {
    "haar": _haar,
    "db4": _db4,
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def check_orthonormality(pair: FilterPair, tol: float = DEFAULT_TOLERANCE) -> list[ConstraintViolation]:
    """Validate every filter-pair constraint; return the violations.

    An empty report means the pair is an admissible orthonormal system
    within ``tol``. Each entry names the failed constraint and carries
    the numeric residual, so callers can present actionable diagnostics.
    """
    report: list[ConstraintViolation] = []
    g, h = pair.g, pair.h
    L = g.size
    if L < 2 or L % 2 or h.size != L:
        report.append(ConstraintViolation("even_length", float(abs(L % 2) or abs(h.size - L))))
        return report

    r = abs(g.sum() - _SQRT2)
    if r > tol:
        report.append(ConstraintViolation("sum_rule", float(r)))

    # sum_n g[n] g[n+2k] = delta(k); shifts beyond L/2-1 vanish identically
    for k in range(L // 2):
        dot = float(np.dot(g[: L - 2 * k], g[2 * k :]))
        r = abs(dot - (1.0 if k == 0 else 0.0))
        if r > tol:
            report.append(ConstraintViolation(f"double_shift_orthonormality_k={k}", r))

    r = float(np.max(np.abs(h - derive_wavelet_filter(g))))
    if r > tol:
        report.append(ConstraintViolation("alternating_flip", r))

    r = abs(float(h.sum()))
    if r > tol:
        report.append(ConstraintViolation("wavelet_zero_sum", r))

    for k in range(-(L // 2) + 1, L // 2):
        if k >= 0:
            dot = float(np.dot(g[: L - 2 * k], h[2 * k :]))
        else:
            dot = float(np.dot(g[-2 * k :], h[: L + 2 * k]))
        if abs(dot) > tol:
            report.append(ConstraintViolation(f"cross_orthogonality_k={k}", abs(dot)))

    return report


def make_wavelet_system(spec: str | np.ndarray, name: str | None = None,
                        tol: float = DEFAULT_TOLERANCE) -> FilterPair:
    """Construct a validated filter pair from a builtin name or raw coefficients.

    ``spec`` is either a builtin name ("haar", "db4") or a sequence of
    scaling coefficients. Raw coefficients must have even length and pass
    the orthonormality checks within ``tol``.

    Raises UnknownWavelet, OddLength, or NotOrthonormal.
    """
    if isinstance(spec, str):
        key = spec.strip().lower()
        if key not in _BUILTINS:
            raise UnknownWavelet(f"no builtin wavelet {spec!r}; available: {', '.join(builtin_names())}")
        pair = FilterPair.from_scaling(name or key, _BUILTINS[key]())
    else:
        g = np.asarray(spec, dtype=float)
        pair = FilterPair.from_scaling(name or "custom", g)

    report = check_orthonormality(pair, tol=tol)
    if report:
        worst = max(report, key=lambda v: v.residual)
        raise NotOrthonormal(
            f"coefficients violate {len(report)} constraint(s); worst: "
            f"{worst.constraint} residual {worst.residual:.3e}"
        )
    return pair


def parse_coefficients_csv(line: str) -> np.ndarray:
    """Parse one CSV line of decimal scaling coefficients."""
    fields = [f for f in (p.strip() for p in line.split(",")) if f]
    if not fields:
        raise OddLength("empty coefficient line")
    return np.array([float(f) for f in fields])


def format_coefficients_csv(g: np.ndarray) -> str:
    """Render coefficients as a CSV line with 17 significant digits.

    17 digits round-trip IEEE-754 doubles exactly, so
    parse_coefficients_csv(format_coefficients_csv(g)) == g.
    """
    return ",".join(f"{float(v):.17g}" for v in np.asarray(g, dtype=float))
