import numpy as np
import pytest

from weylest.distributions import (
    DistributionSpec,
    GeneratorKind,
    Kind,
    Provenance,
    SampleWindow,
    sample_via_weyl,
)

TEST_PROVENANCE = Provenance(
    GeneratorKind.PSEUDO_RANDOM, DistributionSpec(Kind.GAUSSIAN), seed=0)


def make_window(values) -> SampleWindow:
    """Wrap raw values in a SampleWindow with a placeholder provenance."""
    return SampleWindow(np.asarray(values, dtype=float), TEST_PROVENANCE)


@pytest.fixture(scope="session")
def gauss1_window_1e4() -> SampleWindow:
    """First 10^4 Weyl samples of a Gaussian with location 1."""
    return sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 1.0, 1.0), 10_000)


@pytest.fixture(scope="session")
def gauss35_window_2000() -> SampleWindow:
    """First 2000 Weyl samples of a Gaussian with mean 3 and SD 5."""
    return sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 3.0, 5.0), 2000)
