"""Haar sampling for the compact classical groups and the ten symmetric spaces.

Reproducibility contract: every sample is a pure function of (seed, index).
Draw number `index` under seed `s` reads a dedicated counter-based stream
(Philox keyed by the pair), so any subset of draws can be generated in any
order, in any partition into batches, on any number of workers, with
bit-identical results.

Gaussians come from the inversion method on centered 53-bit uniforms; no
rejection step, so stream consumption per draw is a fixed function of the
matrix size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import StructureError
from .spaces import SymmetryClass, cartan_embed

_MASK64 = (1 << 64) - 1
_MAX_RETRIES = 3
# smaller than any norm/pivot a continuous distribution will produce
_DEGENERATE = 1e-250


def substream(seed: int, index: int, lane: int = 0) -> np.random.Generator:
    """Independent generator for draw `index` under `seed`.

    `lane` selects a disjoint counter range within the stream; it is used
    internally to re-draw a sample whose factorization degenerated.
    """
    key = [seed & _MASK64, index & _MASK64]
    counter = [0, 0, 0, lane & _MASK64]
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


def standard_normals(gen: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """N(0,1) variates by inverting the normal CDF on (m + 1/2) * 2**-53
    grid uniforms.  Exactly one 64-bit word per variate."""
    return ndtri(gen.random(shape) + 2.0 ** -54)


def _complex_ginibre(gen: np.random.Generator, m: int) -> np.ndarray:
    z = standard_normals(gen, (2, m, m))
    return (z[0] + 1j * z[1]) / np.sqrt(2.0)


def _qr_positive(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched QR with the R diagonal rotated positive; returns (Q, |diag R|)."""
    q, r = np.linalg.qr(mats)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    mag = np.abs(d)
    safe = np.where(mag > 0, mag, 1.0)
    q = q * (d / safe)[..., None, :].conj()
    return q, mag


def haar_unitary_batch(m: int, seed: int, indices: np.ndarray) -> np.ndarray:
    """Stack of independent Haar unitary m x m matrices, one per index."""
    indices = np.asarray(indices, dtype=np.uint64)
    gin = np.empty((len(indices), m, m), dtype=complex)
    for b, idx in enumerate(indices):
        gin[b] = _complex_ginibre(substream(seed, int(idx)), m)
    q, mag = _qr_positive(gin)
    for b in _degenerate_rows(mag):
        q[b] = _retry_single(lambda g: _qr_positive(_complex_ginibre(g, m)[None]),
                             seed, int(indices[b]))
    return q


def haar_orthogonal_batch(m: int, seed: int, indices: np.ndarray) -> np.ndarray:
    """Stack of independent Haar orthogonal m x m matrices, one per index."""
    indices = np.asarray(indices, dtype=np.uint64)
    gin = np.empty((len(indices), m, m))
    for b, idx in enumerate(indices):
        gin[b] = standard_normals(substream(seed, int(idx)), (m, m))
    q, mag = _qr_positive(gin)
    for b in _degenerate_rows(mag):
        q[b] = _retry_single(lambda g: _qr_positive(standard_normals(g, (m, m))[None]),
                             seed, int(indices[b]))
    return q


def _degenerate_rows(mag: np.ndarray) -> list[int]:
    bad = np.nonzero(np.any(mag < _DEGENERATE, axis=-1))[0]
    return [int(b) for b in bad]


def _retry_single(factorize, seed: int, index: int) -> np.ndarray:
    for lane in range(1, _MAX_RETRIES + 1):
        q, mag = factorize(substream(seed, index, lane=lane))
        if not _degenerate_rows(mag):
            return q[0]
    raise StructureError(f"degenerate factorization persisted for draw {index}")


def _partner(u: np.ndarray, half: int) -> np.ndarray:
    """The quaternionic partner column J conj(u) in the embedded 2n form."""
    p = np.empty_like(u)
    p[..., :half] = -u[..., half:].conj()
    p[..., half:] = u[..., :half].conj()
    return p


def _symplectic_from_ginibre(gin: np.ndarray, half: int) -> tuple[np.ndarray, bool]:
    """Linked-pair Gram-Schmidt: orthonormalize n complex 2n-columns, placing
    each column's quaternionic partner immediately after it.  Two projection
    passes per column keep orthogonality at working precision."""
    batch = gin.shape[0]
    work = np.zeros((batch, 2 * half, 2 * half), dtype=complex)
    ok = True
    for j in range(half):
        v = gin[:, :, j].copy()
        for _ in range(2):
            if j:
                w = work[:, :, : 2 * j]
                coef = np.conj(np.swapaxes(w, 1, 2)) @ v[:, :, None]
                v -= (w @ coef)[:, :, 0]
        nrm = np.sqrt(np.sum(np.abs(v) ** 2, axis=1))
        if np.any(nrm < _DEGENERATE):
            ok = False
            nrm = np.where(nrm < _DEGENERATE, 1.0, nrm)
        u = v / nrm[:, None]
        work[:, :, 2 * j] = u
        work[:, :, 2 * j + 1] = _partner(u, half)
    out = np.empty_like(work)
    out[:, :, :half] = work[:, :, 0::2]
    out[:, :, half:] = work[:, :, 1::2]
    return out, ok


def haar_symplectic_batch(half: int, seed: int, indices: np.ndarray) -> np.ndarray:
    """Stack of Haar samples from the compact symplectic group in its
    embedded 2*half complex form, one per index."""
    indices = np.asarray(indices, dtype=np.uint64)
    m = 2 * half
    gin = np.empty((len(indices), m, half), dtype=complex)
    for b, idx in enumerate(indices):
        gen = substream(seed, int(idx))
        z = standard_normals(gen, (2, m, half))
        gin[b] = (z[0] + 1j * z[1]) / np.sqrt(2.0)
    out, ok = _symplectic_from_ginibre(gin, half)
    if not ok:
        for b in range(len(indices)):
            for lane in range(1, _MAX_RETRIES + 1):
                gen = substream(seed, int(indices[b]), lane=lane)
                z = standard_normals(gen, (2, m, half))
                single, good = _symplectic_from_ginibre(((z[0] + 1j * z[1]) / np.sqrt(2.0))[None], half)
                if good:
                    out[b] = single[0]
                    break
            else:
                raise StructureError(f"degenerate orthogonalization for draw {indices[b]}")
    return out


def haar_unitary(m: int, seed: int, index: int = 0) -> np.ndarray:
    return haar_unitary_batch(m, seed, np.array([index]))[0]


def haar_orthogonal(m: int, seed: int, index: int = 0) -> np.ndarray:
    return haar_orthogonal_batch(m, seed, np.array([index]))[0]


def haar_symplectic(half: int, seed: int, index: int = 0) -> np.ndarray:
    return haar_symplectic_batch(half, seed, np.array([index]))[0]


def haar_group_batch(cls: SymmetryClass, seed: int, indices: np.ndarray) -> np.ndarray:
    if cls.group == "unitary":
        return haar_unitary_batch(cls.ambient, seed, indices)
    if cls.group == "orthogonal":
        return haar_orthogonal_batch(cls.ambient, seed, indices)
    return haar_symplectic_batch(cls.n, seed, indices)


def sample_v_batch(cls: SymmetryClass, seed: int, indices: np.ndarray) -> np.ndarray:
    """Stack of uniform samples from the symmetric space, one per index."""
    return cartan_embed(cls, haar_group_batch(cls, seed, indices))


def sample_v(cls: SymmetryClass, seed: int, index: int = 0) -> np.ndarray:
    return sample_v_batch(cls, seed, np.array([index]))[0]


@dataclass(frozen=True)
class HaarSample:
    """A single draw together with its reproducibility coordinates."""
    descriptor: str
    seed: int
    index: int
    matrix: np.ndarray
