"""Smoke test for the moore_py extension.

Build and run from the repository root:

    cargo build --release -p moore-py --features extension-module
    cp target/release/libmoore_py.so python/moore_py.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import moore_py  # noqa: E402


def main():
    a2 = moore_py.Quiver("vertices: 2\narrow: 1 -> 2\n")
    assert a2.num_vertices == 2 and a2.num_paths == 3
    assert a2.is_dynkin()

    mods = moore_py.corpus(a2)
    assert [m.name for m in mods] == ["P1", "P2", "S1"], mods
    assert len(moore_py.corpus(moore_py.Quiver.d4(), "Fp:5")) == 12

    s = moore_py.Session(a2, field="Q", u=3)
    n, table, gate = s.setup()
    assert n == 1 and gate and all(d == 0 for _, d in table), table

    for a in mods:
        assert s.unit_is_iso(a)
        for b in mods:
            hm, ht = s.hom_dims(a, b)
            assert hm == ht, (a, b, hm, ht)
    assert s.compare_embeddings()

    report = json.loads(s.run())
    assert all(r["pass"] for r in report["records"])
    print(f"A2, u=3: {len(report['records'])} checks pass")

    # for u = 2 the negative shift -2 does not vanish
    n, table, gate = moore_py.Session(a2, u=2).setup()
    assert dict(table)[-2] == 1 and gate

    try:
        moore_py.Session(a2, u=1)
    except ValueError:
        pass
    else:
        raise AssertionError("u = 1 accepted")

    try:
        moore_py.Quiver("vertices: 2\narrow: 1 -> 2\narrow: 2 -> 1\n")
    except ValueError:
        pass
    else:
        raise AssertionError("cycle accepted")

    print("ok")


if __name__ == "__main__":
    main()
