"""Physical constants used throughout the package (SI units)."""

from typing import Final

#: Boltzmann constant, J/K (2019 SI exact value).
K_B: Final[float] = 1.380649e-23
