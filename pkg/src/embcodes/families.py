"""Descriptors naming one concrete geometry/embedding/code, and the pipeline
that builds them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .codes import FUNCTIONAL_CAP, MESSAGE_CAP, LinearCode, code_from_system, functional_classes
from .embeddings import (
    ProjectiveSystem,
    grassmann_embedding,
    point_hyperplane_embedding,
    segre_embedding,
)
from .geometry import PointLineGeometry
from .gf import GF, field_of_order
from .zoo import (
    grassmann_geometry,
    point_hyperplane_geometry,
    polar_grassmannian,
    segre_geometry,
    standard_form,
)

FAMILIES = ("grassmann", "symplectic", "orthogonal", "orthogonal_plus", "hermitian", "segre", "point_hyperplane")
ALIASES = {"hermitian_odd": "hermitian", "hermitian_even": "hermitian"}
POLAR_KINDS = {
    "symplectic": "alternating",
    "orthogonal": "quadratic_parabolic",
    "orthogonal_plus": "quadratic_hyperbolic",
    "hermitian": "hermitian",
}


@dataclass(frozen=True)
class GeometryDescriptor:
    """One member of a family.

    ``n`` and ``k`` follow the usual conventions: vector dimension and
    subspace dimension for ``grassmann``; Witt index and subspace dimension for
    the polar families (vector dimension ``2n``, ``2n+1``, ``2n``); projective
    dimension for ``point_hyperplane``.  ``hermitian`` uses the vector
    dimension ``m``; ``segre`` uses projective dimensions ``m`` and ``second``.
    ``q`` is always the order of the code's alphabet (``q^2`` for hermitian
    families).  ``sigma`` is a Frobenius exponent ``j`` for ``x -> x^(p^j)``.
    """

    family: str
    q: int
    n: int | None = None
    k: int | None = None
    m: int | None = None
    second: int | None = None
    sigma: int = 0

    def __post_init__(self):
        self.validate()

    @classmethod
    def make(cls, family: str, q: int, **kw) -> "GeometryDescriptor":
        """Build a descriptor, resolving the ``hermitian_odd/even`` aliases
        (Witt index ``n`` becomes ``m = 2n+1`` or ``2n``)."""
        if family in ALIASES:
            n = kw.pop("n", None)
            if kw.get("m") is None:
                if n is None:
                    raise ValueError(f"{family} needs --n (Witt index) or --m")
                kw["m"] = 2 * n + (1 if family == "hermitian_odd" else 0)
            elif n is not None and n != kw["m"] // 2:
                raise ValueError("--n and --m disagree")
            want_odd = family == "hermitian_odd"
            if (kw["m"] % 2 == 1) != want_odd:
                raise ValueError(f"{family} needs {'odd' if want_odd else 'even'} m")
            family = ALIASES[family]
        return cls(family, q, **kw)

    def validate(self) -> None:
        fam = self.family
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES + tuple(ALIASES))}")
        F = self.field()
        need = {
            "grassmann": ("n", "k"),
            "symplectic": ("n", "k"),
            "orthogonal": ("n", "k"),
            "orthogonal_plus": ("n", "k"),
            "hermitian": ("m", "k"),
            "segre": ("m", "second"),
            "point_hyperplane": ("n",),
        }[fam]
        for attr in need:
            v = getattr(self, attr)
            if v is None or v < 1:
                raise ValueError(f"{fam} needs a positive {attr}")
        if self.sigma and fam not in ("segre", "point_hyperplane"):
            raise ValueError("sigma applies only to segre and point_hyperplane")
        if not 0 <= self.sigma < F.h:
            raise ValueError(f"sigma must lie in [0, {F.h}) for q = {self.q}")
        if fam == "grassmann" and not 1 <= self.k <= self.n - 1:
            raise ValueError("grassmann needs 1 <= k <= n-1")
        if fam in ("symplectic", "orthogonal", "orthogonal_plus") and self.k > self.n:
            raise ValueError("k cannot exceed the Witt index n")
        if fam == "orthogonal_plus" and self.n < 2:
            raise ValueError("orthogonal_plus needs n >= 2")
        if fam == "hermitian":
            if F.h % 2:
                raise ValueError("hermitian families need a square field order")
            if self.m < 2 or self.k > self.m // 2:
                raise ValueError("hermitian needs m >= 2 and k <= floor(m/2)")
        if fam == "point_hyperplane" and self.n < 2:
            raise ValueError("point_hyperplane needs n >= 2")

    def field(self) -> GF:
        return field_of_order(self.q)

    @property
    def witt_index(self) -> int | None:
        if self.family == "hermitian":
            return self.m // 2
        return self.n if self.family in POLAR_KINDS else None

    @property
    def vector_dim(self) -> int | None:
        if self.family == "symplectic" or self.family == "orthogonal_plus":
            return 2 * self.n
        if self.family == "orthogonal":
            return 2 * self.n + 1
        if self.family == "hermitian":
            return self.m
        return None

    @property
    def label(self) -> str:
        if self.family == "hermitian":
            return "hermitian_odd" if self.m % 2 else "hermitian_even"
        return self.family

    def params(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family, "q": self.q}
        for attr in ("n", "k", "m", "second"):
            v = getattr(self, attr)
            if v is not None:
                out[attr] = v
        if self.family in ("segre", "point_hyperplane"):
            out["sigma"] = self.sigma
        if self.family == "hermitian":
            out["variant"] = self.label
        return out


@dataclass(frozen=True, eq=False)
class Built:
    descriptor: GeometryDescriptor | None
    geometry: PointLineGeometry | None
    system: ProjectiveSystem
    code: LinearCode


def build_geometry(desc: GeometryDescriptor) -> PointLineGeometry:
    F = desc.field()
    fam = desc.family
    if fam == "grassmann":
        return grassmann_geometry(desc.n, desc.k, F)
    if fam in POLAR_KINDS:
        return polar_grassmannian(standard_form(POLAR_KINDS[fam], desc.vector_dim, F), desc.k)
    if fam == "segre":
        return segre_geometry(desc.m, desc.second, F)
    return point_hyperplane_geometry(desc.n, F)


def embed(desc: GeometryDescriptor, g: PointLineGeometry) -> ProjectiveSystem:
    F = desc.field()
    if desc.family in ("grassmann",) + tuple(POLAR_KINDS):
        return grassmann_embedding(g)
    if desc.family == "segre":
        return segre_embedding(g, F, desc.sigma)
    return point_hyperplane_embedding(g, F, desc.sigma)


def build(desc: GeometryDescriptor) -> Built:
    g = build_geometry(desc)
    sys = embed(desc, g)
    return Built(desc, g, sys, code_from_system(sys))


def build_from_system(sys: ProjectiveSystem) -> Built:
    return Built(None, None, sys, code_from_system(sys))


def feasibility(q: int, K: int | None) -> dict[str, bool]:
    """Whether the two enumeration routes fit under their caps."""
    if K is None:
        return {"message_enum": False, "hyperplane_sweep": False}
    return {
        "message_enum": q**K <= MESSAGE_CAP,
        "hyperplane_sweep": functional_classes(q, K) <= FUNCTIONAL_CAP,
    }


# representative members listed by ``list-families``
CATALOG_EXAMPLES = (
    GeometryDescriptor("grassmann", 2, n=4, k=2),
    GeometryDescriptor("grassmann", 3, n=4, k=2),
    GeometryDescriptor("grassmann", 2, n=5, k=2),
    GeometryDescriptor("grassmann", 2, n=6, k=3),
    GeometryDescriptor("grassmann", 2, n=7, k=3),
    GeometryDescriptor("symplectic", 3, n=2, k=2),
    GeometryDescriptor("symplectic", 2, n=3, k=2),
    GeometryDescriptor("symplectic", 2, n=4, k=4),
    GeometryDescriptor("orthogonal", 2, n=2, k=2),
    GeometryDescriptor("orthogonal", 3, n=2, k=2),
    GeometryDescriptor("orthogonal", 2, n=3, k=3),
    GeometryDescriptor("orthogonal_plus", 2, n=3, k=3),
    GeometryDescriptor("orthogonal_plus", 2, n=4, k=4),
    GeometryDescriptor("hermitian", 4, m=5, k=2),
    GeometryDescriptor("hermitian", 4, m=4, k=2),
    GeometryDescriptor("segre", 2, m=1, second=1),
    GeometryDescriptor("segre", 2, m=1, second=2),
    GeometryDescriptor("point_hyperplane", 2, n=2),
    GeometryDescriptor("point_hyperplane", 4, n=2, sigma=1),
)
