"""Non-commutative characteristic functions on compact groups.

Density-matrix <-> group-function transforms, positive-definiteness
machinery, and group-theoretic separability / PPT tests on SU(2) and finite
kinematical groups. The heavy lifting lives in the compiled `_core` module.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
