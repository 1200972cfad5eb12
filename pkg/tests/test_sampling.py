import numpy as np

from haarsym.sampling import (
    HaarSample,
    haar_orthogonal_batch,
    haar_symplectic_batch,
    haar_unitary_batch,
    sample_v,
    sample_v_batch,
    substream,
)
from haarsym.spaces import (
    CLASS_TAGS,
    parse_class,
    quaternion_defect,
    unitarity_defect,
    v_structure_defect,
)


def _descriptor(tag: str, n: int) -> str:
    if tag in ("AIII", "BDI", "CII"):
        return f"{tag}:n={n},p={n - n // 2},q={n // 2}"
    return f"{tag}:n={n}"


def test_substreams_are_reproducible_and_distinct():
    a = substream(42, 0).standard_normal(4)
    b = substream(42, 0).standard_normal(4)
    c = substream(42, 1).standard_normal(4)
    d = substream(42, 0, lane=1).standard_normal(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_batches_are_keyed_by_draw_index():
    # one call on [0, 8) must equal two calls on [0, 4) and [4, 8)
    whole = haar_unitary_batch(5, seed=7, indices=np.arange(8))
    first = haar_unitary_batch(5, seed=7, indices=np.arange(4))
    second = haar_unitary_batch(5, seed=7, indices=np.arange(4, 8))
    assert np.array_equal(whole, np.concatenate([first, second]))

    whole_o = haar_orthogonal_batch(5, seed=7, indices=np.arange(6))
    part_o = haar_orthogonal_batch(5, seed=7, indices=np.array([2, 4]))
    assert np.array_equal(whole_o[[2, 4]], part_o)

    whole_s = haar_symplectic_batch(3, seed=7, indices=np.arange(6))
    part_s = haar_symplectic_batch(3, seed=7, indices=np.array([1, 5]))
    assert np.array_equal(whole_s[[1, 5]], part_s)


def test_group_samples_have_the_right_structure():
    u = haar_unitary_batch(6, seed=1, indices=np.arange(8))
    assert max(unitarity_defect(g) for g in u) < 1e-12

    o = haar_orthogonal_batch(6, seed=2, indices=np.arange(8))
    assert max(unitarity_defect(g) for g in o) < 1e-12
    assert max(np.max(np.abs(g.imag)) for g in o) == 0

    s = haar_symplectic_batch(3, seed=3, indices=np.arange(8))
    assert max(unitarity_defect(g) for g in s) < 1e-12
    assert max(quaternion_defect(g, 3) for g in s) < 1e-12


def test_orthogonal_determinant_both_signs():
    # full orthogonal group, not just rotations
    o = haar_orthogonal_batch(4, seed=11, indices=np.arange(64))
    dets = np.round(np.linalg.det(o)).astype(int)
    assert set(dets) == {-1, 1}


def test_unitary_entry_rotation_invariance():
    # a Haar unitary times a fixed phase is Haar; first-moment check
    u = haar_unitary_batch(4, seed=13, indices=np.arange(2048))
    mean = np.abs(u.mean(axis=0)).max()
    assert mean < 0.05


def test_sample_v_matches_batch_and_structure():
    for tag in CLASS_TAGS:
        cls = parse_class(_descriptor(tag, 5))
        batch = sample_v_batch(cls, seed=21, indices=np.arange(4))
        single = sample_v(cls, seed=21, index=2)
        assert np.array_equal(batch[2], single)
        for v in batch:
            assert v_structure_defect(cls, v) < 1e-10, tag


def test_haar_sample_record():
    cls = parse_class("CI:n=3")
    v = sample_v(cls, seed=5, index=0)
    hs = HaarSample(descriptor="CI:n=3", seed=5, index=0, matrix=v)
    assert hs.matrix.shape == (cls.ambient, cls.ambient)
    assert v_structure_defect(cls, hs.matrix) < 1e-10
