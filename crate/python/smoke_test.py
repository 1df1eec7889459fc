"""Smoke test for the easyq_py extension.

Build the module first, either with maturin (`maturin develop -m crates/python/Cargo.toml
--features extension-module`) or with cargo, in which case this script loads
target/<profile>/libeasyq_py.so directly:

    cargo build -p easyq-python --features extension-module
    python3 python/smoke_test.py
"""

import importlib.machinery
import importlib.util
import pathlib
import sys
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import easyq_py

        return easyq_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libeasyq_py.so", "libeasyq_py.dylib", "easyq_py.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("easyq_py", str(path))
                spec = importlib.util.spec_from_file_location("easyq_py", path, loader=loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("easyq_py not found; build crates/python first")


def main():
    eq = load()

    cross = eq.Partition("oo|oo {u1,d2}{u2,d1}")
    assert str(cross) == "oo|oo {u1,d2}{u2,d1}"
    assert cross.adjoint() == eq.Partition("bb|bb {u1,d2}{u2,d1}")
    assert cross.adjoint().adjoint() == cross
    composite, loops = cross.compose(cross)
    assert composite == eq.Partition("oo|oo {u1,d1}{u2,d2}") and loops == 0
    assert cross.functorial_with(cross, 3)
    flip = cross.t_map(2)
    assert flip[1][2] == "1" and flip[1][1] == "0"

    assert len(eq.partitions("NC2", "oooooo")) == 5
    assert len(eq.partitions("O", "oooo")) == 3

    matrix, rank = eq.gram_matrix("NC2", "oooo", 3)
    assert matrix == [["9", "3"], ["3", "9"]] and rank == 2
    wg = eq.weingarten_matrix("O", "oooo", 1, pseudo=True)
    assert len(wg) == 3

    assert Fraction(eq.moment("S", 5, "u[1,1]")) == Fraction(1, 5)
    assert Fraction(eq.moment("O", 4, "u[1,1] u[1,1] u[1,1] u[1,1]")) == Fraction(3, 24)
    assert Fraction(eq.char_moment("O+", 4, 4, "oooo")) == 2
    # Σ over NC(3) of t^blocks at t = 1/2.
    assert Fraction(eq.char_limit("NC", "1/2", "ooo")) == Fraction(11, 8)
    assert [Fraction(x) for x in eq.law_moment_list("semicircle", 4)] == [1, 0, 1, 0, 2]
    assert Fraction(eq.sphere_moment("real", 3, [1, 1])) == Fraction(1, 3)

    terms, trace = eq.tl_evaluate("e1*e2*e1 - 1/4*e1", 3, "2")
    assert terms == [] and Fraction(trace) == 0

    mean, stderr = eq.mc_moment("O", 3, "u[1,1] u[1,1]", samples=20000, seed=1)
    assert abs(mean - 1 / 3) < 5 * stderr

    try:
        eq.moment("nope", 3, "u[1,1]")
    except ValueError:
        pass
    else:
        raise AssertionError("bad group accepted")

    results = eq.verify(quick=True)
    assert len(results) == 14 and all(ok for _, ok, _ in results), results
    print(f"easyq_py {eq.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
