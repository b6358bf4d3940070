"""Smoke test for the conesurf Python module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/conesurf-*.whl
Then run with python or pytest.
"""
import math

import conesurf


def test_builtins_validate():
    for name in ["square_torus", "octagon_genus2", "mixed_torus", "example_sigma"]:
        s = conesurf.Surface.builtin(name)
        assert s.validate()["ok"], name
        again = conesurf.Surface.from_json(s.to_json())
        assert again.labels == s.labels


def test_octagon_has_one_big_cone():
    s = conesurf.Surface.builtin("octagon_genus2")
    assert s.genus == 2
    (angle,) = s.cone_angles()
    assert abs(angle - 6 * math.pi) < 1e-9


def test_trace_and_shortest_on_torus():
    s = conesurf.Surface.builtin("square_torus")
    p = s.point(0.2, 0.3)
    ray = conesurf.trace(s, p, math.atan2(1, 2), math.sqrt(5))
    assert abs(ray.length - math.sqrt(5)) < 1e-9
    assert ray.is_local_geodesic(s)
    paths = conesurf.shortest(s, p, s.point(0.7, 0.6), "a")
    assert len(paths) == 1
    assert abs(paths[0].length - math.hypot(1.5, 0.3)) < 1e-9


def test_closed_geodesics():
    s = conesurf.Surface.builtin("square_torus")
    (loop,) = conesurf.closed_geodesics(s, "a a b")[:1]
    assert loop.closed and abs(loop.length - math.sqrt(5)) < 1e-9
    sigma = conesurf.Surface.builtin("example_sigma")
    ties = conesurf.closed_geodesics(sigma, "a' d")
    assert len(ties) == 2
    assert all(abs(t.length - 2 * math.sqrt(2)) < 1e-9 for t in ties)


def test_unfold_density_verify():
    s = conesurf.Surface.builtin("square_torus")
    tree = conesurf.unfold(s, s.point(0.5, 0.5), 2.0)
    assert len(tree["cells"]) > 10
    fam = [(n, " ".join(["a"] * n + ["b"])) for n in range(2, 6)]
    recs = conesurf.density(s, "a", fam, s.point(0.5, 0.5))
    assert all(r["sup_distance"] <= 3 / r["n"] + 1e-9 for r in recs)
    rep = conesurf.verify(suites=["validation"], corpus=["square_torus"])
    assert rep["passed"]


def test_errors():
    try:
        conesurf.Surface.builtin("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
    s = conesurf.Surface.builtin("square_torus")
    try:
        conesurf.unfold(s, s.point(0.5, 0.5), 50.0, max_cells=10)
    except conesurf.ConesurfError:
        pass
    else:
        raise AssertionError("expected ConesurfError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"{name}: ok")
