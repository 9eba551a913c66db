"""Periodic grid discretization of wavefunctions on the plane.

States live on an n-by-n sample of the square [-l, l)^2 with axis 0 along
q1 and axis 1 along q2. Derivatives and translations act spectrally, so
smooth localized states are represented to near machine precision as long
as their tails stay clear of the box edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

WFN_FORMAT = "wfn-json/1"


class TailOverflow(ValueError):
    """Requested state puts significant weight on the box boundary."""


@dataclass(frozen=True)
class GridSpec:
    """Grid geometry plus the physical constants of the representation."""

    n: int
    l: float
    theta: float
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 16 or self.n & (self.n - 1):
            raise ValueError("n must be a power of two, at least 16")
        if not self.l > 0:
            raise ValueError("box half-width l must be positive")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    @property
    def step(self) -> float:
        return 2.0 * self.l / self.n

    def axis_points(self) -> np.ndarray:
        return -self.l + self.step * np.arange(self.n)

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.axis_points()
        return np.meshgrid(q, q, indexing="ij")

    def wavenumbers(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.step)


@dataclass(frozen=True)
class Wavefunction:
    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.complex128, copy=True)
        if arr.shape != (self.spec.n, self.spec.n):
            raise ValueError(
                f"values must have shape ({self.spec.n}, {self.spec.n})")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)


def norm(wfn: Wavefunction) -> float:
    return wfn.spec.step * float(np.linalg.norm(wfn.values))


def inner(left: Wavefunction, right: Wavefunction) -> complex:
    if left.spec != right.spec:
        raise ValueError("wavefunctions live on different grids")
    return left.spec.step ** 2 * complex(np.vdot(left.values, right.values))


def normalized(wfn: Wavefunction) -> Wavefunction:
    scale = norm(wfn)
    if scale == 0.0:
        raise ValueError("cannot normalize the zero state")
    return Wavefunction(wfn.spec, wfn.values / scale)


def spectral_derivative(spec: GridSpec, values: np.ndarray, axis: int) -> np.ndarray:
    k = spec.wavenumbers()
    shape = [1, 1]
    shape[axis] = spec.n
    transformed = np.fft.fft(values, axis=axis)
    transformed *= (1j * k).reshape(shape)
    return np.fft.ifft(transformed, axis=axis)


def spectral_translate(spec: GridSpec, values: np.ndarray,
                       shift: Sequence[float]) -> np.ndarray:
    """Evaluate psi(q - shift) by phase rotation in momentum space."""
    k = spec.wavenumbers()
    transformed = np.fft.fft2(values)
    transformed *= np.exp(-1j * k * shift[0]).reshape(spec.n, 1)
    transformed *= np.exp(-1j * k * shift[1]).reshape(1, spec.n)
    return np.fft.ifft2(transformed)


def gaussian(spec: GridSpec, center: Sequence[float] = (0.0, 0.0),
             sigma: float = 1.0, momentum: Sequence[float] = (0.0, 0.0)
             ) -> Wavefunction:
    """Normalized Gaussian wave packet with optional momentum boost.

    Rejects packets whose six-sigma envelope touches the box edge on
    either axis; a leaking tail would silently break the periodic
    representation.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    for axis in range(2):
        if abs(center[axis]) + 6.0 * sigma >= spec.l:
            raise TailOverflow(
                f"center {center[axis]} with sigma {sigma} leaks through "
                f"the boundary on axis {axis}")
    q1, q2 = spec.meshes()
    envelope = np.exp(
        -((q1 - center[0]) ** 2 + (q2 - center[1]) ** 2) / (4.0 * sigma ** 2))
    phase = np.exp(1j * (momentum[0] * q1 + momentum[1] * q2))
    wfn = Wavefunction(spec, envelope * phase)
    return normalized(wfn)


def wavefunction_to_json(wfn: Wavefunction) -> str:
    flat = wfn.values.reshape(-1)
    payload = {
        "format": WFN_FORMAT,
        "n": wfn.spec.n,
        "l": wfn.spec.l,
        "theta": wfn.spec.theta,
        "hbar": wfn.spec.hbar,
        "re": flat.real.tolist(),
        "im": flat.imag.tolist(),
    }
    return json.dumps(payload)


def wavefunction_from_json(text: str) -> Wavefunction:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValueError(f"not valid JSON: {err}") from None
    if not isinstance(payload, dict) or payload.get("format") != WFN_FORMAT:
        raise ValueError(f"expected format tag {WFN_FORMAT!r}")
    try:
        spec = GridSpec(
            n=payload["n"], l=float(payload["l"]),
            theta=float(payload["theta"]), hbar=float(payload["hbar"]))
        re = payload["re"]
        im = payload["im"]
    except KeyError as err:
        raise ValueError(f"missing field {err.args[0]!r}") from None
    if not isinstance(re, list) or not isinstance(im, list):
        raise ValueError("re and im must be arrays of samples")
    expected = spec.n * spec.n
    if len(re) != expected or len(im) != expected:
        raise ValueError(
            f"component arrays must have length {expected}, "
            f"got {len(re)} and {len(im)}")
    values = (np.asarray(re, dtype=float)
              + 1j * np.asarray(im, dtype=float)).reshape(spec.n, spec.n)
    if not np.all(np.isfinite(values)):
        raise ValueError("component arrays contain non-finite entries")
    return Wavefunction(spec, values)
