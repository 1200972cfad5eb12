"""The ten families of classical compact symmetric spaces.

Each family is realized inside its compact group G (unitary, orthogonal or
symplectic) as the image of the twisted embedding g -> g * theta(g)^-1 for an
involutive automorphism theta of G; the three group families themselves
(tags A, BD, C) are included with the identity embedding.  Tags follow the
standard classification lettering.

A class is described by its tag and integer parameters, e.g. "AIII:n=5,p=3,q=2".
The parameter n is the family's own size parameter; the matrices live in
dimension `ambient`, which is 2n for the quaternionic families and for the
two delta = 2 families (AII, DIII), and n otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import StructureError

CLASS_TAGS = ("A", "AI", "AII", "AIII", "BD", "BDI", "DIII", "C", "CI", "CII")
_CHIRAL = ("AIII", "BDI", "CII")
_GROUP = {
    "A": "unitary", "AI": "unitary", "AII": "unitary", "AIII": "unitary",
    "BD": "orthogonal", "BDI": "orthogonal", "DIII": "orthogonal",
    "C": "symplectic", "CI": "symplectic", "CII": "symplectic",
}
_DOUBLED = ("AII", "DIII", "C", "CI", "CII")  # ambient dimension 2n


@dataclass(frozen=True)
class SymmetryClass:
    tag: str
    n: int
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.tag not in CLASS_TAGS:
            raise ValueError(f"unknown class tag {self.tag!r}; choose from {CLASS_TAGS}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.is_chiral:
            if self.p is None or self.q is None:
                raise ValueError(f"class {self.tag} needs signature parameters p and q")
            if self.p < 1 or self.q < 1:
                raise ValueError(f"p and q must be >= 1, got p={self.p}, q={self.q}")
            if self.p + self.q != self.n:
                raise ValueError(f"p + q must equal n, got {self.p}+{self.q} != {self.n}")
        elif self.p is not None or self.q is not None:
            raise ValueError(f"class {self.tag} takes no signature parameters")

    @property
    def is_chiral(self) -> bool:
        return self.tag in _CHIRAL

    @property
    def group(self) -> str:
        return _GROUP[self.tag]

    @property
    def delta(self) -> int:
        return 2 if self.tag in ("AII", "DIII") else 1

    @property
    def ambient(self) -> int:
        return 2 * self.n if self.tag in _DOUBLED else self.n

    @property
    def base_field(self) -> str:
        return {"unitary": "C", "orthogonal": "R", "symplectic": "H"}[self.group]

    def describe(self) -> str:
        if self.is_chiral:
            return f"{self.tag}:n={self.n},p={self.p},q={self.q}"
        return f"{self.tag}:n={self.n}"


_DESC_RE = re.compile(r"^([A-Z]+)(?::(.*))?$")


def parse_class(descriptor: str) -> SymmetryClass:
    """Parse a class descriptor "TAG[:n=..,p=..,q=..]".

    For the chiral classes n may be omitted when p and q are given.
    """
    m = _DESC_RE.match(descriptor.strip())
    if not m:
        raise ValueError(f"malformed class descriptor {descriptor!r}")
    tag, rest = m.group(1), m.group(2)
    params: dict[str, int] = {}
    if rest:
        for piece in rest.split(","):
            piece = piece.strip()
            if not piece:
                continue
            key, _, val = piece.partition("=")
            key = key.strip()
            if key not in ("n", "p", "q") or not val.strip().lstrip("-").isdigit():
                raise ValueError(f"bad parameter {piece!r} in descriptor {descriptor!r}")
            params[key] = int(val)
    if "n" not in params and "p" in params and "q" in params:
        params["n"] = params["p"] + params["q"]
    if "n" not in params:
        raise ValueError(f"descriptor {descriptor!r} does not fix n")
    return SymmetryClass(tag=tag, n=params["n"], p=params.get("p"), q=params.get("q"))


# ---------------------------------------------------------------------------
# structure matrices


def signature_matrix(p: int, q: int) -> np.ndarray:
    """diag(+1 x p, -1 x q)."""
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)]))


def skew_matrix(half: int) -> np.ndarray:
    """The 2*half skew form [[0, -I], [I, 0]]."""
    eye = np.eye(half)
    zero = np.zeros((half, half))
    return np.block([[zero, -eye], [eye, zero]])


def block_signature_matrix(p: int, q: int) -> np.ndarray:
    """diag(signature, signature), quaternion-compatible."""
    s = signature_matrix(p, q)
    zero = np.zeros_like(s)
    return np.block([[s, zero], [zero, s]])


def swap_matrix(half: int) -> np.ndarray:
    """skew @ signature(half, half) = [[0, I], [I, 0]]."""
    return skew_matrix(half) @ signature_matrix(half, half)


def swap_signature_matrix(p: int, q: int) -> np.ndarray:
    """skew @ block_signature = [[0, -signature], [signature, 0]]."""
    return skew_matrix(p + q) @ block_signature_matrix(p, q)


@lru_cache(maxsize=None)
def _structure(cls: SymmetryClass) -> dict[str, np.ndarray]:
    out: dict[str, np.ndarray] = {}
    if cls.is_chiral:
        if cls.tag == "CII":
            out["sig"] = block_signature_matrix(cls.p, cls.q)
            out["skewsig"] = swap_signature_matrix(cls.p, cls.q)
        else:
            out["sig"] = signature_matrix(cls.p, cls.q)
    if cls.tag in ("AII", "DIII", "C", "CI", "CII"):
        out["J"] = skew_matrix(cls.n)
    if cls.tag == "CI":
        out["sig"] = signature_matrix(cls.n, cls.n)
        out["swap"] = swap_matrix(cls.n)
    return out


def _mt(g: np.ndarray) -> np.ndarray:
    # transpose of the matrix part, leaving any leading batch axes alone
    return np.swapaxes(g, -1, -2)


def theta(cls: SymmetryClass, g: np.ndarray) -> np.ndarray:
    """The defining involutive automorphism of the class's group; the
    identity map on the three group families.  Accepts a single matrix or a
    stack with leading batch axes."""
    s = _structure(cls)
    tag = cls.tag
    if tag in ("A", "BD", "C"):
        return g
    if tag == "AI":
        return g.conj()
    if tag == "AII":
        J = s["J"]
        return J.T @ g.conj() @ J
    if tag == "DIII":
        J = s["J"]
        return J.T @ g @ J
    # AIII, BDI, CI, CII: conjugation by the class's signature matrix
    sig = s["sig"]
    return sig @ g @ sig


def cartan_embed(cls: SymmetryClass, g: np.ndarray) -> np.ndarray:
    """Map a group element to the symmetric space: V = g * theta(g)^-1,
    with the identity map on the group families.  Uses the closed forms that
    follow from unitarity of g.  Accepts a single matrix or a stack."""
    tag = cls.tag
    s = _structure(cls)
    if tag in ("A", "BD", "C"):
        return g
    if tag == "AI":
        return g @ _mt(g)
    if tag in ("AII", "DIII"):
        J = s["J"]
        return g @ J.T @ _mt(g) @ J
    if tag == "AIII":
        sig = s["sig"]
        return g @ sig @ _mt(g).conj() @ sig
    if tag == "BDI":
        sig = s["sig"]
        return g @ sig @ _mt(g) @ sig
    # CI, CII: theta(g)^-1 = sig g^-1 sig = sig g* sig
    sig = s["sig"]
    return g @ sig @ _mt(g).conj() @ sig


# ---------------------------------------------------------------------------
# the parameter spaces W


def _quaternion_average(A: np.ndarray, J: np.ndarray) -> np.ndarray:
    return (A + J @ A.conj() @ J.T) / 2


@lru_cache(maxsize=None)
def _projection_maps_commute(cls: SymmetryClass) -> bool:
    # The CI/CII projection composes the quaternion average with a
    # signature-Hermitian average; verify once per class that the order
    # does not matter.
    rng = np.random.default_rng(20260818)
    m = cls.ambient
    A = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    s = _structure(cls)
    J, S = s["J"], s["sig"]
    one = _quaternion_average((A + S @ A.conj().T @ S) / 2, J)
    B = _quaternion_average(A, J)
    two = (B + S @ B.conj().T @ S) / 2
    return bool(np.max(np.abs(one - two)) < 1e-12)


def project_w(cls: SymmetryClass, A: np.ndarray) -> np.ndarray:
    """Orthogonal projection (for the real scalar product Re Tr(AB*)) onto
    the class's parameter space of coefficient matrices."""
    A = np.asarray(A)
    if A.shape != (cls.ambient, cls.ambient):
        raise ValueError(f"matrix shape {A.shape} does not match ambient size {cls.ambient}")
    tag = cls.tag
    s = _structure(cls)
    if tag == "A":
        return A.astype(complex)
    if tag == "AI":
        return (A + A.T) / 2
    if tag == "AII":
        J = s["J"]
        return (A + J @ A.T @ J.T) / 2
    if tag == "AIII":
        sig = s["sig"]
        return (A + sig @ A.conj().T @ sig) / 2
    if tag == "BD":
        return np.real(A)
    if tag == "BDI":
        sig = s["sig"]
        B = np.real(A)
        return (B + sig @ B.T @ sig) / 2
    if tag == "DIII":
        J = s["J"]
        B = np.real(A)
        return (B + J @ B.T @ J.T) / 2
    if tag == "C":
        return _quaternion_average(A.astype(complex), s["J"])
    # CI, CII
    assert _projection_maps_commute(cls), "projection maps fail to commute"
    J, S = s["J"], s["sig"]
    B = _quaternion_average(A.astype(complex), J)
    return (B + S @ B.conj().T @ S) / 2


def membership_w(cls: SymmetryClass, A: np.ndarray, tol: float = 1e-10) -> bool:
    """Whether A already lies in the class's parameter space, within tol."""
    A = np.asarray(A)
    return bool(np.max(np.abs(A - project_w(cls, A))) <= tol)


# ---------------------------------------------------------------------------
# structure checks on sampled points


def unitarity_defect(g: np.ndarray) -> float:
    m = g.shape[0]
    return float(np.max(np.abs(g.conj().T @ g - np.eye(m))))


def quaternion_defect(g: np.ndarray, half: int) -> float:
    """Distance from the embedded quaternion block structure
    g = J conj(g) J^T."""
    J = skew_matrix(half)
    return float(np.max(np.abs(g - J @ g.conj() @ J.T)))


def v_structure_defect(cls: SymmetryClass, V: np.ndarray) -> float:
    """Largest violation of the structural identities a point of the
    symmetric space must satisfy: unitarity, theta(V) V = I, the class's
    symmetry/Hermitian-conjugation relation, realness or quaternion
    structure where applicable."""
    V = np.asarray(V)
    m = cls.ambient
    defects = [unitarity_defect(V)]
    s = _structure(cls)
    tag = cls.tag
    if tag not in ("A", "BD", "C"):
        # points of the embedded space satisfy theta(V) = V^-1
        defects.append(float(np.max(np.abs(theta(cls, V) @ V - np.eye(m)))))
    if tag in ("BD", "BDI", "DIII"):
        defects.append(float(np.max(np.abs(np.imag(V)))))
    if tag in ("C", "CI", "CII"):
        defects.append(quaternion_defect(V, cls.n))
    if tag == "AI":
        defects.append(float(np.max(np.abs(V - V.T))))
    if tag in ("AII", "DIII"):
        J = s["J"]
        VJ = V @ J
        defects.append(float(np.max(np.abs(VJ.T + VJ))))
    if tag in ("AIII", "CI", "CII"):
        sig = s["sig"]
        VS = V @ sig
        defects.append(float(np.max(np.abs(VS - VS.conj().T))))
    if tag == "BDI":
        sig = s["sig"]
        VS = V @ sig
        defects.append(float(np.max(np.abs(VS - VS.T))))
    return max(defects)
