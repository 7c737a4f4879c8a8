"""Drive waveform synthesis: sech pulses, fluxoid trains, envelope compiler.

A single flux quantum is carried by a hyperbolic-secant voltage pulse whose
time integral equals PHI0; fluxoids carry a different (smaller or larger)
integral.  Trains alternate polarity at an odd multiple of the half plasma
period so that successive pulses stay phase-coherent with the junction
oscillation they pump.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .circuit import PHI0, DerivedParams

# arcsech(1/2) = ln(2 + sqrt(3)); half-maximum point of sech.
_ARCSECH_HALF = math.log(2.0 + math.sqrt(3.0))


@dataclass(frozen=True)
class Pulse:
    """One sech voltage pulse V(t) = area/(pi width) * sech((t - t_center)/width).

    ``area`` is the signed flux (time integral of voltage) in Wb; ``width``
    is the sech time constant in seconds.
    """

    t_center: float
    area: float
    width: float

    def __post_init__(self) -> None:
        if not (self.width > 0.0):
            raise ValueError(f"pulse width must be positive, got {self.width!r}")

    @property
    def peak(self) -> float:
        return self.area / (math.pi * self.width)

    def voltage(self, t):
        """Evaluate the pulse at time(s) ``t`` (scalar or ndarray), volts."""
        x = (np.asarray(t, dtype=float) - self.t_center) / self.width
        # 1/cosh computed via exp to stay finite for large |x|
        return self.peak / np.cosh(np.clip(x, -700.0, 700.0))


@dataclass(frozen=True)
class PulseTrain:
    """Ordered sequence of pulses plus the total waveform duration."""

    pulses: tuple[Pulse, ...]
    duration: float
    balanced: bool = False

    def __post_init__(self) -> None:
        centers = [p.t_center for p in self.pulses]
        if any(b < a for a, b in zip(centers, centers[1:])):
            raise ValueError("pulses must be sorted by t_center")
        if self.pulses:
            tail = self.pulses[-1].t_center + 5.0 * self.pulses[-1].width
            if self.duration < tail:
                raise ValueError(
                    f"duration {self.duration!r} < last t_center + 5 width {tail!r}"
                )

    @property
    def total_area(self) -> float:
        return sum(p.area for p in self.pulses)

    def voltage(self, t):
        """Superposition of all pulses at time(s) ``t``."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for p in self.pulses:
            out += p.voltage(t)
        return out

    def sample(self, t: np.ndarray) -> np.ndarray:
        """Like :meth:`voltage` but assembles each pulse only on the grid
        points within 26 widths of its center (sech there is < 1e-11 of peak).
        Intended for long uniform grids."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for p in self.pulses:
            lo = np.searchsorted(t, p.t_center - 26.0 * p.width)
            hi = np.searchsorted(t, p.t_center + 26.0 * p.width)
            if hi > lo:
                out[lo:hi] += p.voltage(t[lo:hi])
        return out

    def to_json(self) -> str:
        payload = {
            "duration": self.duration,
            "balanced": self.balanced,
            "pulses": [
                {"t_center": p.t_center, "area": p.area, "width": p.width}
                for p in self.pulses
            ],
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PulseTrain":
        payload = json.loads(text)
        pulses = tuple(Pulse(**entry) for entry in payload["pulses"])
        return cls(pulses=pulses, duration=payload["duration"],
                   balanced=payload.get("balanced", False))


@dataclass(frozen=True)
class PhaseEnvelope:
    """Target phase extremum magnitudes, one per half-cycle of the train.

    theta[k] is the |phase| the junction should reach on half-cycle k; the
    compiler alternates the sign.  ``shape`` is a descriptive tag only.
    """

    theta: tuple[float, ...]
    shape: str = "custom"

    def __post_init__(self) -> None:
        if any(th < 0.0 for th in self.theta):
            raise ValueError("phase extremum magnitudes must be >= 0")
        if self.shape == "flat_top" and len(set(self.theta[1:-1])) > 1:
            raise ValueError("flat_top envelope requires equal interior theta")

    @classmethod
    def flat_top(cls, n_half_cycles: int, theta: float = math.pi) -> "PhaseEnvelope":
        if n_half_cycles < 1:
            raise ValueError("n_half_cycles must be >= 1")
        return cls(theta=(theta,) * n_half_cycles, shape="flat_top")

    @classmethod
    def gaussian(
        cls,
        n_half_cycles: int,
        peak: float = math.pi,
        sigma: float | None = None,
    ) -> "PhaseEnvelope":
        """Gaussian envelope centered mid-train; sigma defaults to M/6."""
        if n_half_cycles < 1:
            raise ValueError("n_half_cycles must be >= 1")
        m = n_half_cycles
        if sigma is None:
            sigma = m / 6.0
        center = (m + 1) / 2.0
        theta = tuple(
            peak * math.exp(-((k - center) ** 2) / (2.0 * sigma**2))
            for k in range(1, m + 1)
        )
        return cls(theta=theta, shape="gaussian")


def sech_pulse(area: float, width: float, t_center: float = 0.0) -> Pulse:
    """A sech voltage pulse of given signed flux and time constant."""
    if not (width > 0.0):
        raise ValueError(f"width must be positive, got {width!r}")
    return Pulse(t_center=t_center, area=area, width=width)


def single_fluxon_width(derived: DerivedParams, v_tilde: float) -> float:
    """Sech time constant for a single fluxon launched at scaled velocity v.

    Half-maximum rule: width = 2 W arcsech(1/2) / v0 with the Lorentz
    contracted fluxon width W = lambda_j sqrt(1 - v^2), which reduces to
    2 sqrt(1 - v^2) arcsech(1/2) / (v omega_p) -- independent of lambda_j.
    """
    if not 0.0 < v_tilde < 1.0:
        raise ValueError(f"v_tilde must lie in (0, 1), got {v_tilde!r}")
    return (
        2.0 * math.sqrt(1.0 - v_tilde**2) * _ARCSECH_HALF
        / (v_tilde * derived.omega_p)
    )


def train_pulse_width(derived: DerivedParams) -> float:
    """Drive pulse time constant for fluxoid trains: the junction L/R time."""
    return derived.tau_lr


def schedule_spacing(derived: DerivedParams, half_period_multiple: int = 1) -> float:
    """Center-to-center pulse spacing: an odd multiple of pi/omega_p.

    Polarity alternates pulse to pulse, so only odd half-period multiples
    keep the train phase-coherent with the junction oscillation.
    """
    if half_period_multiple < 1 or half_period_multiple % 2 == 0:
        raise ValueError(
            "half_period_multiple must be an odd positive integer: an even "
            "multiple would put successive opposite-polarity pulses in phase "
            "opposition with the plasma oscillation they drive"
        )
    return half_period_multiple * math.pi / derived.omega_p


def compile_envelope(
    envelope: PhaseEnvelope,
    spacing: float,
    width: float,
    t_start: float = 0.0,
    polarity: int = 1,
) -> PulseTrain:
    """Map target phase extrema to a balanced train of signed sech pulses.

    With signed targets s_k = (-1)^(k+1) theta_k (s_0 = s_{M+1} = 0), pulse k
    carries area (s_k - s_{k-1}) Phi0/(2 pi) at t_start + (k-1) spacing.
    M extrema produce M+1 pulses whose areas sum to zero exactly, so the
    equilibrium phase returns to zero after the train.  ``polarity`` = -1
    starts with an antifluxoid instead, negating every area.
    """
    m = len(envelope.theta)
    if m == 0:
        raise ValueError("envelope must contain at least one half-cycle")
    if polarity not in (1, -1):
        raise ValueError("polarity must be +1 or -1")
    if spacing <= 2.0 * width:
        warnings.warn(
            f"pulse spacing {spacing:.3g} s <= 2 widths ({2 * width:.3g} s): "
            "adjacent pulses overlap strongly",
            stacklevel=2,
        )
    signed = [0.0]
    signed += [
        polarity * (-1.0) ** (k + 1) * th
        for k, th in enumerate(envelope.theta, start=1)
    ]
    pulses = []
    for k in range(1, m + 1):
        area = (signed[k] - signed[k - 1]) * PHI0 / (2.0 * math.pi)
        pulses.append(Pulse(t_center=t_start + (k - 1) * spacing, area=area, width=width))
    # Terminal pulse returns the phase to 0; balance it against the floating
    # point sum of the others so the train's net area is exactly zero.
    closing = -sum(p.area for p in pulses)
    pulses.append(Pulse(t_center=t_start + m * spacing, area=closing, width=width))
    duration = pulses[-1].t_center + 5.0 * width
    return PulseTrain(pulses=tuple(pulses), duration=duration, balanced=True)
