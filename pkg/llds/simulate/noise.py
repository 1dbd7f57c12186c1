"""
Multiplicative log-normal noise.

Log-space noise ẑ_t ~ N(0, σ² I) is drawn from numpy's PCG64 bit generator seeded
with ``NoiseSpec.seed`` (Gaussian variates via ``Generator.standard_normal``, the
ziggurat method). The primal factor is z_t = exp(ẑ_t).
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from llds.errors import DimensionMismatchError

MAX_SEED = 2**64 - 1


class NoiseSpec(BaseModel):
    """Isotropic log-space Gaussian noise; sigma = 0 means deterministic dynamics."""

    model_config = ConfigDict(frozen=True)

    sigma: float = Field(ge=0.0, allow_inf_nan=False)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


def sample_noise(spec: NoiseSpec, n: int, steps: int) -> np.ndarray:
    """
    Draw ``steps`` i.i.d. noise vectors of dimension ``n``.

    Returns:
        steps×n array; row t is ẑ_{t+1}. Identical specs give identical draws.
    """
    if n < 1:
        raise DimensionMismatchError(f"noise dimension must be at least 1, got {n}")
    if steps < 0:
        raise DimensionMismatchError(f"steps must be nonnegative, got {steps}")
    if spec.sigma == 0.0:
        return np.zeros((steps, n))
    return spec.sigma * spec.generator().standard_normal((steps, n))
