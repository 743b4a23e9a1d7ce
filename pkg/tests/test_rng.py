import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from swarmlab.rng import GENERATOR_ID, RandomStream, scale_uniform


def _reference(seed, n):
    return np.random.Generator(np.random.PCG64(seed)).random(n)


def test_generator_id():
    assert GENERATOR_ID == "numpy.PCG64"


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_out_of_range(seed):
    with pytest.raises(ValueError):
        RandomStream(seed)


def test_largest_seed_accepted():
    assert RandomStream(2**64 - 1).seed == 2**64 - 1


def test_random_matches_generator():
    np.testing.assert_array_equal(RandomStream(42).random(10), _reference(42, 10))


def test_peek_does_not_consume():
    rs = RandomStream(3)
    first = rs.peek(5).copy()
    np.testing.assert_array_equal(rs.peek(5), first)
    assert rs.consumed == 0
    np.testing.assert_array_equal(rs.random(5), first)
    assert rs.consumed == 5


def test_peek_is_read_only():
    rs = RandomStream(3)
    view = rs.peek(4)
    with pytest.raises(ValueError):
        view[0] = 1.0


def test_advance_skips_values():
    rs = RandomStream(9)
    rs.advance(7)
    np.testing.assert_array_equal(rs.random(3), _reference(9, 10)[7:])


def test_negative_advance_rejected():
    with pytest.raises(ValueError):
        RandomStream(0).advance(-1)


def test_refill_across_buffer_boundary():
    rs = RandomStream(11)
    parts = [rs.random(5000), rs.random(3), rs.peek(9000).copy()]
    rs.advance(9000)
    np.testing.assert_array_equal(np.concatenate(parts), _reference(11, 14003))
    assert rs.consumed == 14003


@given(
    seed=st.integers(min_value=0, max_value=2**64 - 1),
    sizes=st.lists(st.integers(min_value=0, max_value=300), min_size=1, max_size=12),
)
def test_chunking_does_not_change_the_stream(seed, sizes):
    rs = RandomStream(seed)
    drawn = np.concatenate([rs.random(n) for n in sizes])
    np.testing.assert_array_equal(drawn, _reference(seed, sum(sizes)))


def test_uniform_range():
    u = RandomStream(5).uniform(-5.12, 5.12, 1000)
    assert np.all(u >= -5.12) and np.all(u < 5.12)


def test_scale_uniform_endpoints():
    assert scale_uniform(np.array([0.0]), -2.0, 6.0)[0] == -2.0
    assert scale_uniform(np.array([0.5]), -2.0, 6.0)[0] == 2.0
