"""The surface equation, the three Vieta moves, and parameter classification.

Points are triples of ints reduced mod p; bulk operations act on numpy
arrays of shape (M, 3).  Coordinate indices are 0-based (i in {0, 1, 2})
and cyclic: i - 1 and i + 1 are taken mod 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .field import PrimeField, prime_field

Triple = tuple[int, int, int]

# parameter classes
ALL_NONDEGENERATE = "all-nondegenerate"
SPECIAL_FORM = "special-form"
HYPOTHESIS_VIOLATED = "hypothesis-violated"
S_ZERO = "s-zero"


@dataclass(frozen=True)
class SurfaceParams:
    """Immutable surface parameters (p, a1, a2, a3) with derived s = 3 + a1 + a2 + a3."""

    field: PrimeField
    a: Triple
    s: int

    @classmethod
    def make(cls, p: int, a: tuple[int, int, int]) -> "SurfaceParams":
        f = prime_field(p)
        a = tuple(int(v) % p for v in a)
        if len(a) != 3:
            raise ValueError("need exactly three parameters")
        s = (3 + sum(a)) % p
        return cls(f, a, s)

    @property
    def p(self) -> int:
        return self.field.p

    def __repr__(self):
        return f"SurfaceParams(p={self.p}, a={self.a}, s={self.s})"


def make_params(p: int, a1: int, a2: int, a3: int) -> SurfaceParams:
    return SurfaceParams.make(p, (a1, a2, a3))


def reduce_triple(params: SurfaceParams, x) -> Triple:
    p = params.p
    return (int(x[0]) % p, int(x[1]) % p, int(x[2]) % p)


def residual(params: SurfaceParams, x: Triple) -> int:
    """LHS - RHS of the surface equation; zero iff x lies on the surface."""
    p = params.p
    a1, a2, a3 = params.a
    x1, x2, x3 = x
    return (x1 * x1 + x2 * x2 + x3 * x3
            + a1 * x2 * x3 + a2 * x1 * x3 + a3 * x1 * x2
            - params.s * x1 * x2 * x3) % p


def on_surface(params: SurfaceParams, x: Triple) -> bool:
    return residual(params, x) == 0


def moved_coordinate(params: SurfaceParams, x, i: int):
    """The new i-th coordinate under the move m_i (works on ints or arrays)."""
    p = params.p
    a = params.a
    im1, ip1 = (i - 1) % 3, (i + 1) % 3
    return (-x[i] + params.s * x[im1] % p * x[ip1]
            - a[ip1] * x[im1] - a[im1] * x[ip1]) % p


def apply_move(params: SurfaceParams, x: Triple, i: int) -> Triple:
    """Replace x_i by the other root of the surface equation seen as a quadratic in x_i."""
    if i not in (0, 1, 2):
        raise ValueError("move index must be 0, 1 or 2")
    y = list(x)
    y[i] = int(moved_coordinate(params, x, i))
    return tuple(y)


def apply_move_array(params: SurfaceParams, pts: np.ndarray, i: int) -> np.ndarray:
    """Vectorised m_i on an (M, 3) int64 array of points."""
    out = pts.copy()
    cols = (pts[:, 0], pts[:, 1], pts[:, 2])
    out[:, i] = moved_coordinate(params, cols, i)
    return out


def residual_array(params: SurfaceParams, pts: np.ndarray) -> np.ndarray:
    p = params.p
    a1, a2, a3 = params.a
    x1, x2, x3 = pts[:, 0], pts[:, 1], pts[:, 2]
    r = (x1 * x1 + x2 * x2 + x3 * x3) % p
    r = (r + a1 * (x2 * x3 % p) + a2 * (x1 * x3 % p) + a3 * (x1 * x2 % p)) % p
    r = (r - params.s * (x1 * x2 % p) % p * x3) % p
    return r


class ParamClass(NamedTuple):
    """Classification of a parameter set; exactly one kind applies, s = 0 wins."""

    kind: str
    i: int | None = None
    sigma: int | None = None
    alpha: int | None = None


def special_form_detect(params: SurfaceParams) -> tuple[int, int, int] | None:
    """First (i, sigma, alpha) with a_i = 2*sigma, a_{i+1} = alpha, a_{i-1} = alpha*sigma.

    Scan order i = 0, 1, 2 then sigma = +1, -1, for determinism.
    """
    p = params.p
    a = params.a
    for i in range(3):
        for sigma in (1, -1):
            if (a[i] - 2 * sigma) % p != 0:
                continue
            alpha = a[(i + 1) % 3]
            if (a[(i - 1) % 3] - alpha * sigma) % p == 0:
                return i, sigma, alpha
    return None


def classify_parameters(params: SurfaceParams) -> ParamClass:
    p = params.p
    if params.s == 0:
        return ParamClass(S_ZERO)
    degenerate = [i for i in range(3) if (params.a[i] ** 2 - 4) % p == 0]
    if not degenerate:
        return ParamClass(ALL_NONDEGENERATE)
    sf = special_form_detect(params)
    if sf is not None:
        return ParamClass(SPECIAL_FORM, *sf)
    return ParamClass(HYPOTHESIS_VIOLATED)


def rescale(params: SurfaceParams, x: Triple, t: int) -> tuple[SurfaceParams, Triple]:
    """Map x to t*x; a solution for parameter s becomes one for s/t (a unchanged)."""
    p = params.p
    t %= p
    if t == 0:
        raise ValueError("rescaling factor must be nonzero")
    new_s = params.s * params.field.inv(t) % p
    new_params = SurfaceParams(params.field, params.a, new_s)
    return new_params, tuple(t * v % p for v in x)


def permute(params: SurfaceParams, x: Triple, perm: tuple[int, int, int]) -> tuple[SurfaceParams, Triple]:
    """Apply one permutation of {0,1,2} to parameters and coordinates consistently."""
    if sorted(perm) != [0, 1, 2]:
        raise ValueError("perm must be a permutation of (0, 1, 2)")
    a = tuple(params.a[j] for j in perm)
    new_params = SurfaceParams(params.field, a, params.s)
    return new_params, tuple(x[j] for j in perm)


# --- u-coordinates ---------------------------------------------------------

def u_coords(params: SurfaceParams, x: Triple) -> Triple:
    """Affine change u_i = s*x_i - a_i."""
    p = params.p
    return tuple((params.s * x[i] - params.a[i]) % p for i in range(3))


def u_move(params: SurfaceParams, u: Triple, i: int) -> Triple:
    """The move in u-coordinates: u_i -> -u_i + u_{i-1}u_{i+1} - 2a_i - a_{i-1}a_{i+1}."""
    p = params.p
    a = params.a
    im1, ip1 = (i - 1) % 3, (i + 1) % 3
    v = list(u)
    v[i] = (-u[i] + u[im1] * u[ip1] - 2 * a[i] - a[im1] * a[ip1]) % p
    return tuple(v)


def u_residual(params: SurfaceParams, u: Triple) -> int:
    """LHS - RHS of the four-holed-sphere trace equation in u-coordinates."""
    p = params.p
    a = params.a
    lhs = 0
    for i in range(3):
        im1, ip1 = (i - 1) % 3, (i + 1) % 3
        lhs += u[i] * u[i] + (2 * a[i] + a[im1] * a[ip1]) * u[i]
    a1, a2, a3 = a
    rhs = u[0] * u[1] * u[2] - 2 * a1 * a2 * a3 - a1 * a1 - a2 * a2 - a3 * a3
    return (lhs - rhs) % p


def u_move_equivariance(params: SurfaceParams, x: Triple, i: int) -> bool:
    """Check the u-move commutes with the change of variables at x.

    Two identities are verified: the moved u-coordinate equals
    s*x_i' - a_i, and the u-equation residual equals s^2 times the
    surface residual (so for s != 0 one vanishes iff the other does).
    """
    p = params.p
    u = u_coords(params, x)
    u_after = u_move(params, u, i)
    x_after = apply_move(params, x, i)
    equivariant = u_after[i] == (params.s * x_after[i] - params.a[i]) % p
    scale_match = u_residual(params, u) == params.s ** 2 * residual(params, x) % p
    return equivariant and scale_match


# --- fixed points ----------------------------------------------------------

def double_fixed_residual(params: SurfaceParams, x: Triple, i: int) -> int:
    """x_i^2 (u^2-4)(u^2 + a_{i-1}a_{i+1}u + a_{i-1}^2 + a_{i+1}^2 - 4), u = s*x_i - a_i.

    Vanishes whenever x is on the surface and fixed by both m_{i-1} and m_{i+1}.
    """
    p = params.p
    a = params.a
    im1, ip1 = (i - 1) % 3, (i + 1) % 3
    u = (params.s * x[i] - a[i]) % p
    quad = (u * u + a[im1] * a[ip1] * u + a[im1] ** 2 + a[ip1] ** 2 - 4) % p
    return x[i] ** 2 * (u * u - 4) % p * quad % p


def is_double_fixed(params: SurfaceParams, x: Triple, i: int) -> bool:
    """True when both m_{i-1} and m_{i+1} fix x."""
    return (apply_move(params, x, (i - 1) % 3) == x
            and apply_move(params, x, (i + 1) % 3) == x)
