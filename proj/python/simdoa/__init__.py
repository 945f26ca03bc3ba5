# SPDX-License-Identifier: Apache-2.0
"""Wave-domain 2D DFT device: propagation model, phase training, DOA protocol."""

from simdoa._core import *  # noqa: F401,F403
from simdoa._core import __doc__  # noqa: F401
