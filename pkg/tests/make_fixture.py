"""Regenerate tests/data/basic.json (run from the repository root)."""

import pathlib

from fibseq import ChainComplex, ChainMap, IntMatrix, NONNEGATIVE, disk, mapping_cone, sphere, identity_map
from fibseq import workspace as ws_mod


def build() -> ws_mod.Workspace:
    ws = ws_mod.Workspace()
    s0 = sphere(0)
    s1 = sphere(1)
    d1 = disk(1)
    zero = ChainComplex({}, {})
    times2 = ChainMap(s0, s0, {0: IntMatrix([[2]])})
    mc2, _, _ = mapping_cone(times2)
    ws.add_complex("s0", s0)
    ws.add_complex("s1", s1)
    ws.add_complex("d1", d1)
    ws.add_complex("zero", zero)
    ws.add_complex("mc2", mc2)
    ws.add_complex("s1n", sphere(1, variant=NONNEGATIVE))
    ws.add_complex("d1n", disk(1, variant=NONNEGATIVE))
    ws.add_map("times2", times2, "s0", "s0")
    ws.add_map("id_s0", identity_map(s0), "s0", "s0")
    ws.add_map(
        "disk_incl", ChainMap(s0, d1, {0: IntMatrix([[1]])}), "s0", "d1"
    )
    ws.add_map(
        "disk_to_s1", ChainMap(d1, s1, {1: IntMatrix([[1]])}), "d1", "s1"
    )
    ws.add_map("s0_to_zero", ChainMap(s0, zero, {}), "s0", "zero")
    ws.add_map("zero_to_s1", ChainMap(zero, s1, {}), "zero", "s1")
    ws.add_map(
        "qn", ChainMap(ws.complex("d1n"), ws.complex("s1n"), {1: IntMatrix([[1]])}),
        "d1n", "s1n",
    )
    # strict kernel square of the fibration d1 ->> s1: a homotopy fiber square
    ws.add_square(
        "kernel_sq",
        {
            "a_top": "disk_incl",
            "a_left": "s0_to_zero",
            "b_right": "disk_to_s1",
            "c_bottom": "zero_to_s1",
        },
    )
    return ws


if __name__ == "__main__":
    out = pathlib.Path(__file__).parent / "data" / "basic.json"
    out.parent.mkdir(exist_ok=True)
    ws_mod.save(build(), str(out))
    print(f"wrote {out}")
