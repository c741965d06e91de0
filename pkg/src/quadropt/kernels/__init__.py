"""Integrator kernel selection: compiled Cython core with numpy fallback.

Both backends implement the identical interaction-picture RK4 scheme; the
compiled one fuses the per-mode phase updates with the reductions.  Which
one is active is exposed as BACKEND ('compiled' or 'python').
"""

try:  # pragma: no cover - depends on whether the extension was built
    from quadropt.kernels._rk4 import integrate_kernel  # type: ignore

    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from quadropt.kernels._rk4_py import integrate_kernel

    BACKEND = "python"

from quadropt.kernels._rk4_py import integrate_kernel as integrate_kernel_python

__all__ = ["integrate_kernel", "integrate_kernel_python", "BACKEND"]
