"""Scenario geometry and physical-layer channel synthesis.

The planar transmit array has ``m_count`` horizontal and ``mprime_count``
vertical elements at half-wavelength spacing. Steering vectors are flattened
with the vertical index varying fastest, i.e. element ``(m, m')`` sits at
position ``m * mprime_count + m'``. Every downstream module relies on this
ordering.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigurationError

TARGET = "target"
CLUTTER = "clutter"


@dataclass(frozen=True)
class ArrayGeometry:
    m_count: int = 2
    mprime_count: int = 2
    element_spacing_wavelengths: float = 0.5

    def __post_init__(self):
        if self.m_count < 1 or self.mprime_count < 1:
            raise ConfigurationError("array needs at least one element per axis")
        if self.element_spacing_wavelengths <= 0:
            raise ConfigurationError("element spacing must be positive")

    @property
    def size(self) -> int:
        return self.m_count * self.mprime_count


@dataclass(frozen=True)
class SceneObject:
    azimuth_deg: float
    elevation_deg: float
    range_m: float = 1.0
    kind: str = TARGET
    second_moment: float = 1.0

    def __post_init__(self):
        if self.range_m <= 0:
            raise ConfigurationError(f"range_m must be positive, got {self.range_m}")
        if self.second_moment <= 0:
            raise ConfigurationError("second_moment must be positive")
        if self.kind not in (TARGET, CLUTTER):
            raise ConfigurationError(f"unknown object kind {self.kind!r}")

    def position(self) -> np.ndarray:
        """Cartesian position with the array at the origin.

        The first two coordinates are the direction cosines seen by the
        horizontal and vertical array axes, so they agree with the phase
        progression of :func:`steering_vector`.
        """
        th = np.deg2rad(self.azimuth_deg)
        ph = np.deg2rad(self.elevation_deg)
        unit = np.array([np.sin(th) * np.sin(ph), np.cos(ph), np.cos(th) * np.sin(ph)])
        return self.range_m * unit


@dataclass(frozen=True)
class ChannelSpec:
    """How object-to-sensor gains are generated.

    ``rayleigh`` draws i.i.d. unit-variance circular Gaussian gains. ``los``
    uses a deterministic free-space phase ``exp(-j 2 pi d / wavelength)`` with
    ``1/d`` amplitude, which needs ``sensor_positions`` (one xyz per sensor).
    """

    kind: str = "rayleigh"
    sensor_positions: tuple | None = None
    wavelength_m: float = 0.02

    def __post_init__(self):
        if self.kind not in ("rayleigh", "los"):
            raise ConfigurationError(f"unknown channel kind {self.kind!r}")
        if self.sensor_positions is not None:
            pos = tuple(tuple(float(c) for c in row) for row in self.sensor_positions)
            if any(len(row) != 3 for row in pos):
                raise ConfigurationError("sensor positions must be xyz triples")
            object.__setattr__(self, "sensor_positions", pos)


@dataclass(frozen=True)
class Scenario:
    array: ArrayGeometry
    objects: tuple
    sensor_count: int
    fusion_antennas: int
    sinr_demands: tuple
    pathloss_exponent: float = 2.0
    noise_variance: float = 0.5
    p_max: float = 1000.0
    alpha_max: float = 2.0
    channel_spec: ChannelSpec = field(default_factory=ChannelSpec)
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "sinr_demands", tuple(float(s) for s in self.sinr_demands))
        kinds = [o.kind for o in self.objects]
        n_t = kinds.count(TARGET)
        if n_t == 0:
            raise ConfigurationError("scenario needs at least one target")
        if kinds != [TARGET] * n_t + [CLUTTER] * (len(kinds) - n_t):
            raise ConfigurationError("targets must precede clutters")
        if len(self.sinr_demands) != n_t:
            raise ConfigurationError(
                f"{len(self.sinr_demands)} SINR demands for {n_t} targets")
        if any(s <= 0 for s in self.sinr_demands):
            raise ConfigurationError("SINR demands must be positive")
        if self.sensor_count < 1 or self.fusion_antennas < 1:
            raise ConfigurationError("sensor_count and fusion_antennas must be >= 1")
        for name in ("pathloss_exponent", "noise_variance", "p_max", "alpha_max"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be positive")

    @property
    def n_targets(self) -> int:
        return sum(o.kind == TARGET for o in self.objects)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def moments(self) -> np.ndarray:
        return np.array([o.second_moment for o in self.objects], dtype=float)

    def replace(self, **changes) -> "Scenario":
        return dataclasses.replace(self, **changes)

    def with_demands(self, psi) -> "Scenario":
        """Copy with every target demand set to ``psi`` (scalar or sequence)."""
        psi = np.broadcast_to(np.asarray(psi, dtype=float), (self.n_targets,))
        return self.replace(sinr_demands=tuple(psi))

    def with_moments(self, moments: Sequence[float]) -> "Scenario":
        objs = tuple(dataclasses.replace(o, second_moment=float(q))
                     for o, q in zip(self.objects, moments))
        return self.replace(objects=objs)

    # -- JSON ---------------------------------------------------------------
    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        cs = d["channel_spec"]
        if cs["sensor_positions"] is not None:
            cs["sensor_positions"] = [list(p) for p in cs["sensor_positions"]]
        d["objects"] = [dict(o) for o in d["objects"]]
        d["sinr_demands"] = list(d["sinr_demands"])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        d = dict(d)
        try:
            d["array"] = ArrayGeometry(**d.get("array", {}))
            d["objects"] = tuple(SceneObject(**o) for o in d["objects"])
            d["channel_spec"] = ChannelSpec(**d.get("channel_spec", {}))
            return cls(**d)
        except (TypeError, KeyError) as exc:
            raise ConfigurationError(f"invalid scenario document: {exc}") from exc


@dataclass(frozen=True)
class ChannelSet:
    """``g[i, k]``: object i to sensor k. ``f[k]``: sensor k to fusion center (R,)."""

    g: np.ndarray
    f: np.ndarray

    @property
    def f_sq_norms(self) -> np.ndarray:
        return np.sum(np.abs(self.f) ** 2, axis=1)


def load_scenario(path) -> Scenario:
    """Read a scenario JSON file; malformed JSON raises with path and line."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc
    return Scenario.from_dict(doc)


def save_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2) + "\n", encoding="utf-8")


def steering_vector(array: ArrayGeometry, obj: SceneObject, gamma: float = 2.0) -> np.ndarray:
    """Array response toward ``obj`` including distance path loss ``r**-gamma``."""
    th = np.deg2rad(obj.azimuth_deg)
    ph = np.deg2rad(obj.elevation_deg)
    # phase increment per element is 2*pi*spacing*direction_cosine
    k = 2.0 * np.pi * array.element_spacing_wavelengths
    m = np.arange(array.m_count)[:, None]
    mp = np.arange(array.mprime_count)[None, :]
    phase = k * (m * np.sin(th) * np.sin(ph) + mp * np.cos(ph))
    nu = obj.range_m ** (-gamma)
    return np.sqrt(nu) * np.exp(1j * phase).ravel()


def steering_vectors(scenario: Scenario) -> list:
    return [steering_vector(scenario.array, o, scenario.pathloss_exponent)
            for o in scenario.objects]


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples with unit variance."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def synthesize_channels(scenario: Scenario, seed: int | None = None) -> ChannelSet:
    """Draw the sensor-to-fusion and object-to-sensor channels.

    The result is a pure function of the scenario and ``seed`` (defaults to
    ``scenario.rng_seed``).
    """
    spec = scenario.channel_spec
    K, R, N = scenario.sensor_count, scenario.fusion_antennas, scenario.n_objects
    if spec.kind == "los":
        if spec.sensor_positions is None:
            raise ConfigurationError("los channels require sensor_positions")
        if len(spec.sensor_positions) != K:
            raise ConfigurationError(
                f"{len(spec.sensor_positions)} sensor positions for {K} sensors")
    rng = np.random.default_rng(scenario.rng_seed if seed is None else seed)
    f = complex_normal(rng, (K, R))
    if spec.kind == "rayleigh":
        g = complex_normal(rng, (N, K))
    else:
        obj_pos = np.array([o.position() for o in scenario.objects])
        sens_pos = np.asarray(spec.sensor_positions, dtype=float)
        d = np.linalg.norm(obj_pos[:, None, :] - sens_pos[None, :, :], axis=2)
        if np.any(d <= 0):
            raise ConfigurationError("a sensor coincides with an object position")
        g = np.exp(-2j * np.pi * d / spec.wavelength_m) / d
    return ChannelSet(g=g, f=f)


def reference_scenario(clutter_range: float = 0.5, psi: float = 1.0,
                       sensor_count: int = 3, p_max: float = 1000.0,
                       seed: int = 0) -> Scenario:
    """Two targets and one clutter in front of a 2x2 array, 10-antenna fusion center."""
    objects = (
        SceneObject(20.0, 40.0, 1.0, TARGET, 1.0),
        SceneObject(45.0, 30.0, 1.0, TARGET, 1.0),
        SceneObject(70.0, 85.0, clutter_range, CLUTTER, 1.0),
    )
    return Scenario(
        array=ArrayGeometry(2, 2),
        objects=objects,
        sensor_count=sensor_count,
        fusion_antennas=10,
        sinr_demands=(psi, psi),
        pathloss_exponent=2.0,
        noise_variance=0.5,
        p_max=p_max,
        alpha_max=2.0,
        rng_seed=seed,
    )


BUNDLED = {"near": "reference_near.json", "far": "reference_far.json"}


def bundled_scenario_path(name: str = "near") -> Path:
    """Path of a packaged reference scenario (``near``: clutter at 0.5, ``far``: at 2)."""
    if name not in BUNDLED:
        raise ConfigurationError(f"unknown bundled scenario {name!r}; choose from {sorted(BUNDLED)}")
    return Path(__file__).parent / "data" / BUNDLED[name]
