"""Restricted root systems with multiplicity functions.

A root system here is a finite set of positive roots in a rank-r Euclidean
space, each carrying a positive multiplicity. Vectors are plain 1-D numpy
arrays holding coordinates with respect to a fixed orthonormal basis, so a
linear functional and its metric dual share one representation: alpha(H) is
just the dot product.

Non-reduced systems are supported: the list may contain pairs {alpha,
2*alpha}, as happens for projective spaces. A multiplicity function is
"geometric" when it is positive-integer valued and an odd multiplicity
forces the doubled root to be absent; that is exactly the constraint
satisfied by the restricted root data of a compact symmetric space.

Default normalization: the standard coordinate realizations produced by
:func:`build_root_system` are globally rescaled so the longest positive
root has squared length 2. All quantities of the form <v, alpha_0> with
alpha_0 = alpha/<alpha,alpha> are invariant under this choice; callers who
care about absolute norms can pass ``metric_scale``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "RootSystem",
    "SphericalWeight",
    "build_root_system",
    "rho",
    "fundamental_spherical_weights",
    "spherical_weight",
    "rho_pairing_identity",
    "indivisible_positive",
    "dimension",
    "dominant_weights",
    "rescale",
    "is_reduced",
    "as_vector",
]

_MATCH_TOL = 1e-9


def as_vector(coords, rank: int | None = None) -> np.ndarray:
    """Validate and freeze a coordinate vector (finite entries, right length)."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D coordinate vector, got shape {v.shape}")
    if rank is not None and v.shape[0] != rank:
        raise ValueError(f"vector has length {v.shape[0]}, expected rank {rank}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    v = v.copy()
    v.flags.writeable = False
    return v


def _find_row(rows: np.ndarray, v: np.ndarray) -> int:
    """Index of the row equal to v within tolerance, or -1."""
    if rows.size == 0:
        return -1
    hits = np.nonzero(np.all(np.abs(rows - v) <= _MATCH_TOL, axis=1))[0]
    return int(hits[0]) if hits.size else -1


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Positive roots with multiplicities in a rank-r Euclidean space.

    ``roots`` is an (n, rank) array whose rows are the positive roots and
    ``mults`` the matching multiplicities. ``geometric`` gates the integer
    constraints described in the module docstring.
    """

    rank: int
    roots: np.ndarray
    mults: np.ndarray
    geometric: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be a positive integer")
        roots = np.asarray(self.roots, dtype=float)
        mults = np.asarray(self.mults, dtype=float)
        if roots.ndim != 2 or roots.shape[1] != self.rank or roots.shape[0] == 0:
            raise ValueError("roots must be a nonempty (n, rank) array")
        if mults.shape != (roots.shape[0],):
            raise ValueError("mults must align with roots")
        if not (np.all(np.isfinite(roots)) and np.all(np.isfinite(mults))):
            raise ValueError("non-finite root data")
        if np.any(np.linalg.norm(roots, axis=1) <= _MATCH_TOL):
            raise ValueError("zero vector listed as a root")
        if np.any(mults <= 0):
            raise ValueError("multiplicities must be positive")
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if np.all(np.abs(roots[i] - roots[j]) <= _MATCH_TOL):
                    raise ValueError("duplicate positive root")
        roots = roots.copy()
        mults = mults.copy()
        roots.flags.writeable = False
        mults.flags.writeable = False
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "mults", mults)
        self._validate_structure()

    # -- structural checks -------------------------------------------------

    def _validate_structure(self):
        roots, mults = self.roots, self.mults
        for i, a in enumerate(roots):
            has_half = _find_row(roots, 0.5 * a) >= 0
            has_double = _find_row(roots, 2.0 * a) >= 0
            if has_half and has_double:
                raise ValueError("root has both its half and its double in the system")
            if self.geometric:
                m = mults[i]
                if abs(m - round(m)) > _MATCH_TOL:
                    raise ValueError("geometric multiplicities must be integers")
                if int(round(m)) % 2 == 1 and has_double:
                    raise ValueError(
                        "odd multiplicity on a root whose double is present"
                    )
        object.__setattr__(self, "_simple_idx", self._detect_simple())
        self._check_weyl_invariance()

    def _detect_simple(self) -> tuple[int, ...]:
        # simple = positive root not expressible as a sum of two positive roots
        roots = self.roots
        simple = []
        for i, a in enumerate(roots):
            is_sum = False
            for j in range(len(roots)):
                for k in range(j, len(roots)):
                    if np.all(np.abs(roots[j] + roots[k] - a) <= _MATCH_TOL):
                        is_sum = True
                        break
                if is_sum:
                    break
            if not is_sum:
                simple.append(i)
        # deterministic order: lexicographic on rounded coordinates
        simple.sort(key=lambda i: tuple(np.round(roots[i], 9)))
        return tuple(simple)

    def _check_weyl_invariance(self):
        # m must be constant on orbits; for geometric systems the reflected
        # root additionally has to be present (closure under the Weyl group).
        roots, mults = self.roots, self.mults
        for j in self._simple_idx:
            s = roots[j]
            ss = float(s @ s)
            for i, a in enumerate(roots):
                refl = a - (2.0 * float(a @ s) / ss) * s
                k = _find_row(roots, refl)
                if k < 0:
                    k = _find_row(roots, -refl)
                if k < 0:
                    if self.geometric:
                        raise ValueError(
                            "geometric system not closed under a simple reflection"
                        )
                    continue
                if abs(mults[k] - mults[i]) > _MATCH_TOL * max(1.0, mults[i]):
                    raise ValueError("multiplicity is not Weyl invariant")

    # -- convenience queries ------------------------------------------------

    @property
    def n_roots(self) -> int:
        return self.roots.shape[0]

    def simple_roots(self) -> np.ndarray:
        """Simple positive roots as rows, in a deterministic order."""
        return self.roots[list(self._simple_idx)]

    def simple_mult(self, j: int) -> float:
        return float(self.mults[self._simple_idx[j]])

    def index_of(self, v: np.ndarray) -> int:
        return _find_row(self.roots, np.asarray(v, dtype=float))

    def double_mult(self, v: np.ndarray) -> float:
        """Multiplicity of 2*v, or 0 when 2*v is not a root."""
        k = _find_row(self.roots, 2.0 * np.asarray(v, dtype=float))
        return float(self.mults[k]) if k >= 0 else 0.0

    def pairings(self, H) -> np.ndarray:
        """alpha(H) for every positive root alpha, as an array."""
        return self.roots @ as_vector(H, self.rank)


def is_reduced(rs: RootSystem) -> bool:
    """True when no positive root has its double in the system."""
    return all(_find_row(rs.roots, 2.0 * a) < 0 for a in rs.roots)


@dataclass(frozen=True, eq=False)
class SphericalWeight:
    """A dominant lattice weight: nonnegative integer coordinates in the
    fundamental spherical weight basis, together with the realized vector."""

    coeffs: tuple[int, ...]
    vector: np.ndarray

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise ValueError("weight coefficients must be nonnegative")
        object.__setattr__(self, "vector", as_vector(self.vector, len(self.coeffs)))


# ---------------------------------------------------------------------------
# standard realizations
# ---------------------------------------------------------------------------

_TYPES = ("A", "B", "C", "D", "BC", "G2", "F4")


def _e(i: int, d: int) -> np.ndarray:
    v = np.zeros(d)
    v[i] = 1.0
    return v


def _positive_roots_standard(type_label: str, rank: int):
    """Positive roots of the requested family in classical coordinates.

    Returns (roots, ambient_dim); for type A the ambient dimension is
    rank + 1 and the span is the sum-zero hyperplane.
    """
    t, r = type_label, rank
    out: list[np.ndarray] = []
    if t == "A":
        d = r + 1
        for i in range(d):
            for j in range(i + 1, d):
                out.append(_e(i, d) - _e(j, d))
        return out, d
    if t in ("B", "C", "D", "BC"):
        if r < 2 and t in ("B", "C", "D"):
            raise ValueError(f"type {t} requires rank >= 2 (use A for rank 1)")
        d = r
        for i in range(r):
            for j in range(i + 1, r):
                out.append(_e(i, d) - _e(j, d))
                out.append(_e(i, d) + _e(j, d))
        if t in ("B", "BC"):
            out.extend(_e(i, d) for i in range(r))
        if t in ("C", "BC"):
            out.extend(2.0 * _e(i, d) for i in range(r))
        return out, d
    if t == "G2":
        if r != 2:
            raise ValueError("G2 has rank 2")
        a1 = np.array([1.0, 0.0])
        a2 = np.array([-1.5, 0.5 * math.sqrt(3.0)])
        return [a1, a2, a1 + a2, 2 * a1 + a2, 3 * a1 + a2, 3 * a1 + 2 * a2], 2
    if t == "F4":
        if r != 4:
            raise ValueError("F4 has rank 4")
        d = 4
        for i in range(4):
            for j in range(i + 1, 4):
                out.append(_e(i, d) - _e(j, d))
                out.append(_e(i, d) + _e(j, d))
        out.extend(_e(i, d) for i in range(4))
        for s2 in (1.0, -1.0):
            for s3 in (1.0, -1.0):
                for s4 in (1.0, -1.0):
                    out.append(0.5 * np.array([1.0, s2, s3, s4]))
        return out, d
    raise ValueError(f"unknown root system type {type_label!r}")


def _length_classes(roots: np.ndarray) -> list[np.ndarray]:
    """Indices of the roots grouped by squared length, shortest first."""
    lens = np.round(np.einsum("ij,ij->i", roots, roots), 9)
    values = sorted(set(lens.tolist()))
    return [np.nonzero(lens == v)[0] for v in values]


def _class_labels(n_classes: int) -> tuple[str, ...]:
    if n_classes == 1:
        return ("all",)
    if n_classes == 2:
        return ("short", "long")
    if n_classes == 3:
        return ("short", "long", "double")
    raise ValueError("unexpected number of root length classes")


def _resolve_mults(labels, classes, roots, multiplicities) -> list[float]:
    """Map user-supplied orbit labels onto the length classes."""
    aliases: dict[str, str] = {}
    if labels == ("all",):
        aliases["short"] = "all"
        aliases["long"] = "all"
    if labels == ("short", "long"):
        aliases["all"] = "short"
        # a two-class system whose long roots are doubles (BC rank 1) may
        # label the top class "double"
        top = classes[1]
        if all(_find_row(roots, 0.5 * roots[i]) >= 0 for i in top):
            aliases["double"] = "long"
    given = dict(multiplicities)
    resolved: list[float] = []
    for lab in labels:
        candidates = [lab] + [k for k, v in aliases.items() if v == lab]
        hits = [k for k in candidates if k in given]
        if not hits:
            raise ValueError(f"missing multiplicity for root class {lab!r}")
        if len(hits) > 1:
            raise ValueError(f"conflicting multiplicities for root class {lab!r}")
        m = float(given.pop(hits[0]))
        if not (m > 0 and math.isfinite(m)):
            raise ValueError("multiplicities must be positive and finite")
        resolved.append(m)
    if given:
        raise ValueError(f"unknown root class labels: {sorted(given)}")
    return resolved


def build_root_system(
    type_label: str,
    rank: int,
    multiplicities: Mapping[str, float],
    *,
    metric_scale: float = 1.0,
    geometric: bool | None = None,
) -> RootSystem:
    """Construct the standard realization of a classical family.

    ``multiplicities`` maps root length classes to values: "all" for the
    single-class types, "short"/"long" for two classes, and additionally
    "double" for the doubled class of BC systems of rank >= 2. The longest
    root is normalized to squared length 2 * metric_scale.
    """
    t = str(type_label).upper()
    if t not in _TYPES:
        raise ValueError(f"unknown root system type {type_label!r}")
    if rank < 1:
        raise ValueError("rank must be a positive integer")
    if not (metric_scale > 0 and math.isfinite(metric_scale)):
        raise ValueError("metric_scale must be positive")

    raw, d = _positive_roots_standard(t, rank)
    roots = np.array(raw, dtype=float)
    if d > rank:
        # isometric coordinates on the span (type A lives on a hyperplane)
        q, _ = np.linalg.qr(roots[: rank + 1].T)  # some spanning columns
        basis = q[:, :rank]
        # guard: make sure the basis really spans the root space
        if np.linalg.matrix_rank(roots @ basis, tol=1e-9) < rank:
            q, _ = np.linalg.qr(roots.T)
            basis = q[:, :rank]
        roots = roots @ basis
        # canonical column signs (QR sign conventions vary)
        for k in range(rank):
            col = roots[:, k]
            nz = col[np.abs(col) > 1e-9]
            if nz.size and nz[0] < 0:
                roots[:, k] = -col

    classes = _length_classes(roots)
    labels = _class_labels(len(classes))
    class_mults = _resolve_mults(labels, classes, roots, multiplicities)

    mults = np.empty(len(roots))
    for cls, m in zip(classes, class_mults):
        mults[cls] = m

    longest = max(float(a @ a) for a in roots)
    roots = roots * math.sqrt(2.0 * metric_scale / longest)

    order = sorted(range(len(roots)), key=lambda i: tuple(np.round(roots[i], 9)))
    roots = roots[order]
    mults = mults[order]

    if geometric is None:
        geometric = bool(np.all(np.abs(mults - np.round(mults)) <= _MATCH_TOL))
    return RootSystem(rank=rank, roots=roots, mults=mults, geometric=geometric)


# ---------------------------------------------------------------------------
# derived quantities
# ---------------------------------------------------------------------------


def rho(rs: RootSystem) -> np.ndarray:
    """Half the multiplicity-weighted sum of the positive roots."""
    return as_vector(0.5 * (rs.mults @ rs.roots), rs.rank)


def dimension(rs: RootSystem) -> float:
    """rank + total multiplicity; the manifold dimension for geometric data."""
    return rs.rank + float(np.sum(rs.mults))


def fundamental_spherical_weights(rs: RootSystem) -> list[np.ndarray]:
    """Basis of the dominant weight lattice, dual to the unmultipliable basis.

    With beta_j = alpha_j when 2*alpha_j is not a root and beta_j =
    2*alpha_j otherwise, the weights satisfy <mu_j, beta_k>/<beta_k,beta_k>
    = delta_jk.
    """
    simple = rs.simple_roots()
    if simple.shape[0] != rs.rank:
        raise ValueError("simple roots do not form a basis of the ambient space")
    beta = []
    for a in simple:
        beta.append(2.0 * a if _find_row(rs.roots, 2.0 * a) >= 0 else a)
    B = np.array(beta)
    norms = np.einsum("ij,ij->i", B, B)
    try:
        # rows of the solution: mu_j with B @ mu_j = delta_jk * |beta_k|^2
        M = np.linalg.solve(B, np.diag(norms)).T
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular Gram matrix: degenerate root basis") from exc
    return [as_vector(M[j], rs.rank) for j in range(rs.rank)]


def spherical_weight(rs: RootSystem, coeffs: Sequence[int]) -> SphericalWeight:
    """Realize the dominant weight with the given lattice coordinates."""
    if len(coeffs) != rs.rank:
        raise ValueError(f"expected {rs.rank} coefficients, got {len(coeffs)}")
    ints = []
    for c in coeffs:
        if c != int(c):
            raise ValueError("weight coefficients must be integers")
        if c < 0:
            raise ValueError("weight coefficients must be nonnegative")
        ints.append(int(c))
    mus = fundamental_spherical_weights(rs)
    vec = np.zeros(rs.rank)
    for n, mu in zip(ints, mus):
        vec = vec + n * mu
    return SphericalWeight(coeffs=tuple(ints), vector=vec)


def dominant_weights(rs: RootSystem, max_coeff: int) -> list[SphericalWeight]:
    """All dominant weights with coordinates in {0, ..., max_coeff}."""
    if max_coeff < 0:
        raise ValueError("max_coeff must be nonnegative")
    mus = fundamental_spherical_weights(rs)
    out = []
    for coeffs in itertools.product(range(max_coeff + 1), repeat=rs.rank):
        vec = np.zeros(rs.rank)
        for n, mu in zip(coeffs, mus):
            vec = vec + n * mu
        out.append(SphericalWeight(coeffs=tuple(coeffs), vector=vec))
    return out


def rho_pairing_identity(rs: RootSystem, j: int) -> tuple[float, float]:
    """Both sides of <rho, alpha_j> = (m_j/2 + m_{2 alpha_j}) <alpha_j, alpha_j>.

    The identity holds exactly because the reflection in a simple root
    permutes the remaining positive roots; callers assert near-equality.
    """
    if not 0 <= j < len(rs._simple_idx):
        raise IndexError(f"simple root index {j} out of range")
    a = rs.roots[rs._simple_idx[j]]
    m = rs.mults[rs._simple_idx[j]]
    m2 = rs.double_mult(a)
    lhs = float(rho(rs) @ a)
    rhs = (0.5 * m + m2) * float(a @ a)
    return lhs, rhs


def indivisible_positive(rs: RootSystem) -> list[tuple[np.ndarray, float, float]]:
    """Positive roots alpha with alpha/2 absent, as (alpha, m_alpha, m_2alpha)."""
    out = []
    for i, a in enumerate(rs.roots):
        if _find_row(rs.roots, 0.5 * a) >= 0:
            continue
        out.append((as_vector(a, rs.rank), float(rs.mults[i]), rs.double_mult(a)))
    return out


def rescale(rs: RootSystem, c: float) -> RootSystem:
    """Rescale the metric so every pairing <x, y> is multiplied by c."""
    if not (c > 0 and math.isfinite(c)):
        raise ValueError("scale factor must be positive")
    return RootSystem(
        rank=rs.rank,
        roots=rs.roots * math.sqrt(c),
        mults=rs.mults,
        geometric=rs.geometric,
    )
