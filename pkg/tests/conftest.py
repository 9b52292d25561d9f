import pytest
from hypothesis import HealthCheck, settings

from core.acceptance import spec_path as _spec_path
from core.spec_loader import load_hom, load_monoid, load_ring

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def spec_path():
    return _spec_path


@pytest.fixture
def integers_ring():
    return load_ring(_spec_path("z.json"))


@pytest.fixture
def f2():
    return load_ring(_spec_path("f2.json"))


@pytest.fixture
def f4():
    return load_ring(_spec_path("f4.json"))


@pytest.fixture
def dual_numbers():
    return load_ring(_spec_path("f2t.json"))


@pytest.fixture
def z4():
    return load_ring(_spec_path("z4.json"))


@pytest.fixture
def gaussian_integers():
    return load_ring(_spec_path("zi.json"))


@pytest.fixture
def f2_to_f4():
    return load_hom(_spec_path("f2_to_f4.json"))


@pytest.fixture
def f2_to_dual_numbers():
    return load_hom(_spec_path("f2_to_f2t.json"))


@pytest.fixture
def nat2_swap():
    return load_monoid(_spec_path("nat2_swap.json"))
