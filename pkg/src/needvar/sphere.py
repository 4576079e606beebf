"""Geometry of the unit sphere: directions, geodesic distance, uniform sampling.

All surface integrals in this package are taken against the unnormalized
measure dx = sin(theta) dtheta dphi, whose total mass is 4*pi.  Uniform
random points are probability draws, i.e. their density is 1/(4*pi) with
respect to dx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
SPHERE_AREA = 4.0 * math.pi

_UNIT_TOL = 1e-12


def rng_from_seed(seed) -> np.random.Generator:
    """Counter-based generator: identical seed gives an identical stream."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def spawn_seeds(seed, n: int) -> list[np.random.SeedSequence]:
    """Split a master seed into n independent child seeds."""
    return np.random.SeedSequence(seed).spawn(n)


@dataclass(frozen=True)
class Direction:
    """A point on the unit sphere, stored as a unit 3-vector.

    Spherical coordinates follow the colatitude/longitude convention:
    theta = arccos(z) in [0, pi], phi in [0, 2*pi).  At the poles phi is
    defined as 0.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(norm2 - 1.0) > 3.0 * _UNIT_TOL:
            raise ValueError(f"direction must be a unit vector, |v|^2 = {norm2!r}")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        st = math.sin(theta)
        return cls(st * math.cos(phi), st * math.sin(phi), math.cos(theta))

    @classmethod
    def from_vector(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float)
        n = math.sqrt(float(v @ v))
        if n == 0.0:
            raise ValueError("zero vector has no direction")
        return cls(v[0] / n, v[1] / n, v[2] / n)

    @property
    def theta(self) -> float:
        return math.acos(min(1.0, max(-1.0, self.z)))

    @property
    def phi(self) -> float:
        if abs(self.x) < _UNIT_TOL and abs(self.y) < _UNIT_TOL:
            return 0.0
        return math.atan2(self.y, self.x) % TWO_PI

    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def geodesic_distance(a: Direction, b: Direction) -> float:
    """Arc length between two directions, in [0, pi].

    Computed as atan2(|a x b|, a.b), which stays accurate near 0 and pi
    where arccos of the dot product loses digits.
    """
    av, bv = a.vector(), b.vector()
    cross = np.cross(av, bv)
    return math.atan2(math.sqrt(float(cross @ cross)), float(av @ bv))


def angles_to_xyz(theta, phi) -> np.ndarray:
    """Stack colatitude/longitude arrays into an (n, 3) unit-vector array."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def angles_between(xyz: np.ndarray, center: np.ndarray) -> np.ndarray:
    """Geodesic distances from each row of xyz to a single center vector."""
    dots = xyz @ center
    crosses = np.cross(xyz, center)
    sins = np.sqrt(np.sum(crosses * crosses, axis=-1))
    return np.arctan2(sins, dots)


def sample_uniform_xyz(n: int, seed) -> np.ndarray:
    """n independent uniform draws as an (n, 3) array of unit vectors.

    z ~ Uniform(-1, 1) and phi ~ Uniform(0, 2*pi): exact and branch-free.
    """
    if n < 1:
        raise ValueError("at least one sample must be requested")
    rng = rng_from_seed(seed)
    z = rng.uniform(-1.0, 1.0, size=n)
    phi = rng.uniform(0.0, TWO_PI, size=n)
    s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=-1)


def sample_uniform(n: int, seed) -> list[Direction]:
    """n independent uniform Directions; deterministic given the seed."""
    xyz = sample_uniform_xyz(n, seed)
    return [Direction(float(x), float(y), float(z)) for x, y, z in xyz]
