"""Smoke test for the cmrpy extension module.

Build the module first:

    cargo build -p cmr-python --features extension-module --release

then run this script from the repository root. It copies the shared library
to a temporary directory under the importable name and exercises it.
"""

import importlib
import pathlib
import shutil
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    candidates = [ROOT / "target" / profile / name
                  for profile in ("release", "debug")
                  for name in ("libcmrpy.so", "libcmrpy.dylib", "cmrpy.dll")]
    lib = next((c for c in candidates if c.exists()), None)
    if lib is None:
        sys.exit("cmrpy library not found; build it with "
                 "`cargo build -p cmr-python --features extension-module --release`")
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / ("cmrpy" + suffix))
    sys.path.insert(0, str(tmp))
    return importlib.import_module("cmrpy")


def main():
    cmrpy = load()

    pot = cmrpy.Potential("rational")
    x = cmrpy.PhasePoint([0.0, 0.5, 1.2], [1.0, 0.0, -1.0])
    residual = cmrpy.RMatrix(pot, case="I").residual(x)
    assert residual < 1e-9, residual

    det, prod = cmrpy.phi_determinant([1.0, 2.0, 4.0])
    assert abs(det - 6.0) < 1e-12 and prod == 6.0, (det, prod)

    for n in (2, 3, 4):
        f = cmrpy.frobenius_check(n)
        assert f["passed"] and f["kappa"] == Fraction(-2), f

    out = cmrpy.simulate(cmrpy.PhasePoint([1.0, 0.0], [0.3, -0.3]), pot, dt=1e-3, steps=1000)
    assert out["eigenvalue_drift"] < 1e-7, out

    try:
        cmrpy.PhasePoint([1.0, 1.0]).lax(pot)
    except cmrpy.CmrError:
        pass
    else:
        raise AssertionError("coinciding coordinates must raise CmrError")

    print(f"cmrpy smoke test passed (residual {residual:.2e}, det phi {det:g})")


if __name__ == "__main__":
    main()
