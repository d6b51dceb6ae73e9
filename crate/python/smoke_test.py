#!/usr/bin/env python3
"""Build-and-import smoke test for the gcount Python module.

Builds the extension crate (unless GCOUNT_SKIP_BUILD is set), stages the
cdylib under an importable name, and drives the main entry points.

    python3 python/smoke_test.py
"""

import os
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_extension() -> pathlib.Path:
    if not os.environ.get("GCOUNT_SKIP_BUILD"):
        subprocess.run(
            ["cargo", "build", "-p", "gcount-python"],
            cwd=ROOT,
            check=True,
        )
    candidates = [
        ROOT / "target" / "debug" / "libgcount.so",
        ROOT / "target" / "release" / "libgcount.so",
        ROOT / "target" / "debug" / "libgcount.dylib",
        ROOT / "target" / "release" / "libgcount.dylib",
    ]
    for built in candidates:
        if built.exists():
            return built
    raise SystemExit("libgcount not found under target/; run cargo build -p gcount-python")


def stage(built: pathlib.Path, stage_dir: pathlib.Path) -> None:
    target = stage_dir / ("gcount" + (".so" if built.suffix == ".so" else ".so"))
    shutil.copy2(built, target)
    sys.path.insert(0, str(stage_dir))


def main() -> None:
    with tempfile.TemporaryDirectory(prefix="gcount-smoke-") as tmp:
        stage(build_extension(), pathlib.Path(tmp))
        import gcount

        # Counted blocks: a^n b^n c^n.
        lgen = gcount.build_lgen([1, 1], [2, 3])
        report = lgen.run("aabbcc")
        assert report.accepted, report.verdict
        assert report.counter_reversals == 1 and report.head_reversals == 0, report
        assert not lgen.run("aabbc").accepted
        assert lgen.run("").accepted
        assert lgen.validate() == []

        # Machine descriptions round-trip through text.
        text = lgen.emit()
        reparsed = gcount.Machine.parse(text)
        assert reparsed.emit() == text
        assert reparsed.name == lgen.name == "lgen-k3-l1.1-p2.3"

        # Trace lines render configurations.
        traced = lgen.run("abc", trace=True)
        assert traced.trace and traced.trace[0].endswith("noop 0√2+0√3"), traced.trace

        # Block matching on the matrix counter (two-way head).
        lpat = gcount.build_lpat()
        assert lpat.run("01#01#").accepted
        assert not lpat.run("01#10#").accepted
        assert lpat.counter_kind == "matrix" and lpat.head_mode == "two-way"

        # Mirrored pairs, one-way.
        lpal = gcount.build_lpal()
        assert lpal.run("01#10").accepted
        assert not lpal.run("01#01").accepted
        assert lpal.run("#").accepted

        # Oracles agree with the machines on a small exhaustive corpus.
        total, bad, lines = gcount.differential_check(lgen, "lgen", max_len=6, multipliers=[1, 1])
        assert (total, bad, lines) == (1093, 0, []), (total, bad, lines)
        total, bad, _ = gcount.differential_check(lpal, "lpal", max_len=6)
        assert (total, bad) == (1093, 0)

        # Real -> matrix transform preserves the language.
        matrix = lgen.transform_to_matrix()
        assert matrix.counter_kind == "matrix"
        total, bad, _ = gcount.differential_check(matrix, "lgen", max_len=6, multipliers=[1, 1])
        assert (total, bad) == (1093, 0)

        # Exact sign determination over sqrt(2), sqrt(3).
        assert gcount.sign_of_sqrt_sum([2, 3], [1, -1]) == -1
        assert gcount.sign_of_sqrt_sum([2, 3], [3, -2]) == 1
        assert gcount.sign_of_sqrt_sum([2, 3], [0, 0]) == 0

        # Word-product separation.
        assert gcount.aw_product_check("AB", "AB")
        assert not gcount.aw_product_check("A", "B")

        print("gcount smoke test passed")


if __name__ == "__main__":
    main()
