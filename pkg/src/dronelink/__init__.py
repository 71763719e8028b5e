"""dronelink: link budgets and Monte Carlo link-level simulation for
massive-MIMO ground stations serving swarms of single-antenna drones."""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
