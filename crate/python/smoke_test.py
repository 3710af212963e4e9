"""Smoke test for the hexpivot Python extension.

Build and run from the repository root:

    cargo build --release -p hexpivot-py
    cp target/release/libhexpivot.so python/hexpivot.so
    python3 python/smoke_test.py
"""

import hexpivot


def main() -> None:
    tri = hexpivot.Configuration([(0, 0), (0, 1), (1, 0)])
    assert len(tri) == 3
    assert hexpivot.Configuration.parse(tri.to_text()) == tri

    moves = tri.legal_moves()
    assert moves, "a triangle can always pivot"
    m = moves[0]
    after = tri.apply(m)
    assert after.apply(m.inverse()) == tri
    assert set(tri.legal_moves("restricted")) <= set(moves)

    a = hexpivot.Configuration.random(12, 7)
    b = hexpivot.Configuration.random(12, 8)
    plan = hexpivot.reconfigure(a, b)
    end = plan.verify(a)
    assert end.same_shape(b)
    assert plan.reversed().verify(end) == a
    assert hexpivot.Plan.parse(plan.to_jsonl()).to_jsonl() == plan.to_jsonl()

    canon_plan, canon = hexpivot.plan_to_canonical(a)
    assert canon.is_canonical_path() and canon_plan.verify(a) == canon

    assert len(hexpivot.enumerate(4)) == 44
    assert hexpivot.explore(4) == (44, 108, 1)

    try:
        hexpivot.Configuration([(0, 0), (5, 5)])
    except ValueError:
        pass
    else:
        raise AssertionError("disconnected input must be rejected")

    print(f"ok: {len(plan)} moves from {a!r} to a translate of b; svg {len(tri.render_svg())} bytes")


if __name__ == "__main__":
    main()
