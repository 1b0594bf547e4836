"""Bounded model domains in C^n with closed-form Green and distance oracles.

Supported kinds: the unit disc, the Euclidean unit ball, the unit polydisc,
and norm balls (Euclidean or sup norm) with arbitrary center and radius.
Each domain exposes a defining norm scaled so that the boundary sits at 1,
plus whatever closed-form oracles exist for it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .hyperbolic import (
    BOUNDARY_TOL,
    COINCIDENCE_TOL,
    NEG_INF,
    DomainViolation,
    disc_distance,
    eq2_transform,
    green_disc,
)

KINDS = ("disc", "ball", "polydisc", "banach_ball")
NORMS = ("euclidean", "sup")


def as_vector(x, dim: int | None = None) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=complex))
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {v.shape[0]}")
    return v


def hermitian_inner(x: np.ndarray, y: np.ndarray) -> complex:
    return complex(np.sum(x * np.conj(y)))


def vector_norm(x: np.ndarray, norm: str) -> float:
    if norm == "euclidean":
        return float(np.linalg.norm(x))
    if norm == "sup":
        return float(np.max(np.abs(x)))
    raise ValueError(f"unknown norm {norm!r}")


@dataclass(frozen=True)
class ModelDomain:
    """Immutable descriptor of a bounded model domain in C^n."""

    kind: str
    dim: int
    center: tuple = ()
    radius: float = 1.0
    norm: str = "euclidean"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.kind == "disc" and self.dim != 1:
            raise ValueError("the disc has dimension 1")
        if self.norm not in NORMS:
            raise ValueError(f"unknown norm {self.norm!r}")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.kind == "banach_ball":
            c = as_vector(self.center if len(self.center) else np.zeros(self.dim),
                          self.dim)
            object.__setattr__(self, "center", tuple(complex(z) for z in c))

    # -- membership ---------------------------------------------------------

    def defining_norm(self, x) -> float:
        """Norm of x scaled so the boundary is at 1."""
        x = as_vector(x, self.dim)
        if self.kind == "disc":
            return float(abs(x[0]))
        if self.kind == "ball":
            return float(np.linalg.norm(x))
        if self.kind == "polydisc":
            return float(np.max(np.abs(x)))
        c = np.asarray(self.center, dtype=complex)
        return vector_norm(x - c, self.norm) / self.radius

    def defining_norms(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized defining norm for an array of points, shape (m, dim)."""
        pts = np.asarray(pts, dtype=complex)
        if self.kind in ("disc", "ball"):
            return np.linalg.norm(pts, axis=-1)
        if self.kind == "polydisc":
            return np.max(np.abs(pts), axis=-1)
        c = np.asarray(self.center, dtype=complex)
        if self.norm == "euclidean":
            return np.linalg.norm(pts - c, axis=-1) / self.radius
        return np.max(np.abs(pts - c), axis=-1) / self.radius

    def classify(self, x) -> str:
        s = self.defining_norm(x)
        if s < 1.0 - BOUNDARY_TOL:
            return "inside"
        if s <= 1.0 + BOUNDARY_TOL:
            return "boundary"
        return "outside"

    def contains(self, x) -> bool:
        return self.classify(x) == "inside"

    def require_inside(self, x, name: str = "point") -> np.ndarray:
        x = as_vector(x, self.dim)
        if not self.contains(x):
            raise DomainViolation(
                f"{name} = {x} is not strictly inside {self.describe()}")
        return x

    @property
    def circumscribed_radius(self) -> float:
        """Radius of a Euclidean ball around the origin containing the domain."""
        if self.kind in ("disc", "ball"):
            return 1.0
        if self.kind == "polydisc":
            return math.sqrt(self.dim)
        c = np.asarray(self.center, dtype=complex)
        scale = 1.0 if self.norm == "euclidean" else math.sqrt(self.dim)
        return float(np.linalg.norm(c)) + self.radius * scale

    # -- closed-form oracles -------------------------------------------------

    @property
    def has_green_oracle(self) -> bool:
        return self.kind in ("disc", "ball", "polydisc")

    def green(self, x, y) -> float:
        """Closed-form Green function with pole at y, where available."""
        if self.kind == "disc":
            x = self.require_inside(x, "x")
            y = self.require_inside(y, "y")
            return green_disc(complex(x[0]), complex(y[0]))
        if self.kind == "ball":
            return green_ball(x, y)
        if self.kind == "polydisc":
            return green_polydisc(x, y)
        # Banach balls only have the centered-pole elementary form
        c = np.asarray(self.center, dtype=complex)
        y = as_vector(y, self.dim)
        if vector_norm(y - c, self.norm) > COINCIDENCE_TOL:
            raise DomainViolation(
                "Banach-ball Green oracle exists only for a pole at the center")
        return banach_ball_green(x, c, self.radius, self.norm)

    def distance(self, x, y) -> float:
        """Closed-form invariant distance, where available."""
        if self.kind == "disc":
            x = self.require_inside(x, "x")
            y = self.require_inside(y, "y")
            return disc_distance(complex(x[0]), complex(y[0]))
        if self.kind == "ball":
            return kobayashi_distance_ball(x, y)
        raise NotImplementedError(f"no closed-form distance for {self.kind}")

    # -- serialization -------------------------------------------------------

    def describe(self) -> str:
        """Structured text descriptor (kind, dimension, center, radius, norm)."""
        payload = {"kind": self.kind, "dim": self.dim}
        if self.kind == "banach_ball":
            payload["center"] = [[z.real, z.imag] for z in self.center]
            payload["radius"] = self.radius
            payload["norm"] = self.norm
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_descriptor(cls, text: str) -> "ModelDomain":
        text = text.strip()
        if text.startswith("{"):
            payload = json.loads(text)
            kind = payload["kind"]
            dim = int(payload["dim"])
            if kind == "banach_ball":
                center = tuple(complex(re, im) for re, im in payload["center"])
                return cls(kind, dim, center=center,
                           radius=float(payload.get("radius", 1.0)),
                           norm=payload.get("norm", "euclidean"))
            return cls(kind, dim)
        # shorthand: disc | ball<n> | polydisc<n>
        if text == "disc":
            return cls("disc", 1)
        for prefix in ("ball", "polydisc"):
            if text.startswith(prefix):
                tail = text[len(prefix):]
                dim = int(tail) if tail else 1
                return cls(prefix, dim)
        raise ValueError(f"cannot parse domain descriptor {text!r}")


def unit_disc() -> ModelDomain:
    return ModelDomain("disc", 1)


def unit_ball(dim: int) -> ModelDomain:
    return ModelDomain("ball", dim)


def unit_polydisc(dim: int) -> ModelDomain:
    return ModelDomain("polydisc", dim)


def banach_ball(center, radius: float, norm: str) -> ModelDomain:
    c = as_vector(center)
    return ModelDomain("banach_ball", c.shape[0], center=tuple(map(complex, c)),
                       radius=radius, norm=norm)


# -- ball automorphism and oracles -------------------------------------------


def ball_automorphism(y) -> "callable":
    """The involutive automorphism phi_y of the Euclidean ball with phi_y(y)=0.

    Standard projection / orthogonal-complement form.  phi_y(0) = y and
    phi_y is an involution; both are verified numerically in the tests.
    """
    y = as_vector(y)
    ny2 = float(np.real(hermitian_inner(y, y)))
    if ny2 >= 1.0 - BOUNDARY_TOL:
        raise DomainViolation(f"automorphism base {y} not inside the ball")
    s = math.sqrt(1.0 - ny2)

    def phi(x) -> np.ndarray:
        x = as_vector(x, y.shape[0])
        if ny2 < COINCIDENCE_TOL:
            return -x
        ip = hermitian_inner(x, y)
        proj = (ip / ny2) * y
        orth = x - proj
        return (y - proj - s * orth) / (1.0 - ip)

    return phi


def kobayashi_distance_ball(x, y) -> float:
    """Kobayashi distance of the Euclidean unit ball, atanh |phi_y(x)|."""
    B = unit_ball(as_vector(x).shape[0])
    x = B.require_inside(x, "x")
    y = B.require_inside(y, "y")
    if np.linalg.norm(x - y) < COINCIDENCE_TOL:
        return 0.0
    r = float(np.linalg.norm(ball_automorphism(y)(x)))
    return math.atanh(min(r, 1.0 - 1e-16))


def green_ball(x, y) -> float:
    """Green function of the Euclidean unit ball: log tanh of its distance."""
    return eq2_transform(kobayashi_distance_ball(x, y))


def green_polydisc(x, y) -> float:
    """Green function of the unit polydisc: max of coordinate disc values."""
    x = as_vector(x)
    y = as_vector(y, x.shape[0])
    D = unit_polydisc(x.shape[0])
    D.require_inside(x, "x")
    D.require_inside(y, "y")
    return max(green_disc(complex(a), complex(b)) for a, b in zip(x, y))


def banach_ball_green(x, center, r: float, norm: str) -> float:
    """Green function of a norm ball at its center: log(||x - center|| / r)."""
    x = as_vector(x)
    center = as_vector(center, x.shape[0])
    if r <= 0:
        raise ValueError("radius must be positive")
    t = vector_norm(x - center, norm) / r
    if t >= 1.0 - BOUNDARY_TOL:
        raise DomainViolation(f"point at relative norm {t} is not inside the ball")
    if t < COINCIDENCE_TOL:
        return NEG_INF
    return math.log(t)
