"""Acceptance criteria.

Each test prints one ``PASS``/``FAIL`` line naming its criterion, and the
same line is repeated in the terminal summary (see conftest.py).  Tolerance
is zero failures everywhere; runtime limits are asserted where stated.
"""

import pathlib
import subprocess
import sys
import time

from s5kit.decide import Outcome, global_consequence, local_consequence, valid
from s5kit.formula import Atom, Box, Impl, dia, neg
from s5kit.hilbert import EMPTY, CheckError, Mode, ax, check, context, nec
from s5kit.lemmas import theorem_library
from s5kit.script import parse_script
from s5kit.sweeps import (
    CodingSweep,
    CompletenessSweep,
    DerivationFuzz,
    LindenbaumSweep,
    OracleCrossCheck,
    TruthLemmaSweep,
)

from conftest import ACCEPTANCE_LINES

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"
p = Atom(0)


def report(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}: {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)


def _sweep(n, title, res, limit=None):
    ok = res.ok and (limit is None or res.seconds < limit)
    detail = f"{res.checked} checked, {len(res.failures)} failures, {res.seconds:.1f}s"
    if limit is not None:
        detail += f" (limit {limit}s)"
    report(n, title, ok, detail)
    assert res.ok, res.failures[:5]
    if limit is not None:
        assert res.seconds < limit


def test_criterion_1_examples():
    t0 = time.perf_counter()
    results = {}
    lib = theorem_library()
    j = check(lib["box_dne_tree"], Mode.RESTRICTED)
    results["box_dne_tree"] = j.context == EMPTY and j.conclusion == Impl(Box(p), Box(neg(neg(p))))
    results["valid dia box p -> p"] = valid(Impl(dia(Box(p)), p)).outcome is Outcome.VALID
    results["local p |= box p"] = local_consequence([p], Box(p)).outcome is Outcome.NOT_ENTAILED
    results["global p |= box p"] = global_consequence([p], Box(p)).outcome is Outcome.ENTAILED
    d = nec(ax(p, context(p)), context(p))
    try:
        check(d, Mode.RESTRICTED)
        results["nec restricted rejects"] = False
    except CheckError as e:
        results["nec restricted rejects"] = e.kind == "side-condition"
    results["nec unrestricted accepts"] = check(d, Mode.UNRESTRICTED).conclusion == Box(p)
    results["p -> box p invalid"] = valid(Impl(p, Box(p))).outcome is Outcome.INVALID
    elapsed = time.perf_counter() - t0
    bad = [k for k, v in results.items() if not v]
    ok = not bad and elapsed < 5
    report(1, "worked examples", ok, f"{len(results) - len(bad)}/{len(results)} exact, {elapsed:.2f}s (limit 5s)")
    assert not bad, bad
    assert elapsed < 5


def test_criterion_2_truth_lemma():
    _sweep(2, "truth-lemma audit", TruthLemmaSweep().run(), limit=120)


def test_criterion_3_oracle_cross_check():
    _sweep(3, "oracle cross-check", OracleCrossCheck(max_worlds=4).run(), limit=300)


def test_criterion_4_completeness_equivalence():
    _sweep(4, "completeness equivalence", CompletenessSweep().run())


def test_criterion_5_soundness_fuzz():
    _sweep(5, "soundness fuzz", DerivationFuzz(count=1000, sigma=2, depth=4).run_soundness())


def test_criterion_6_deduction_transformer():
    res = DerivationFuzz(count=1000, sigma=2, depth=4).run_deduction()
    assert res.checked > 500  # most random derivations have a nonempty context
    _sweep(6, "deduction transformer", res)


def test_criterion_7_lindenbaum_triple():
    res = LindenbaumSweep(max_members=10, random_count=500).run()
    _sweep(7, "lindenbaum triple", res)


def test_criterion_8_coding_roundtrip():
    _sweep(8, "coding roundtrip", CodingSweep(max_size=6, sigma=3).run(), limit=10)


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "s5kit", *args], capture_output=True, cwd=ROOT)


def test_criterion_9_cli_end_to_end():
    library = ROOT / "proofs" / "s5_library.s5p"
    failing = ROOT / "proofs" / "nec_in_context.s5p"
    blocks = parse_script(library.read_text(encoding="utf-8"))
    names = {b.name for b in blocks}
    checks = {
        ">= 10 theorems": len(blocks) >= 10,
        "required theorems": {"id", "dne", "dni", "box_dne_tree", "box_dne_stmt", "dia_box_to_p"} <= names,
        "thm import used": any(ln.rule.value == "thm" for b in blocks for ln in b.lines),
    }
    runs = [
        (("check", str(library)), 0, "check_library.txt"),
        (("check", str(failing)), 1, "check_nec_restricted.txt"),
        (("check", "--nec-mode", "unrestricted", str(failing)), 0, "check_nec_unrestricted.txt"),
    ]
    for argv, code, golden in runs:
        a, b = _cli(*argv), _cli(*argv)
        key = " ".join(argv[:-1] + (pathlib.Path(argv[-1]).name,))
        checks[f"exit {code}: {key}"] = a.returncode == code == b.returncode
        checks[f"byte-stable: {key}"] = a.stdout == b.stdout == (GOLDEN / golden).read_bytes()
    for argv, code in [
        (("decide", "valid", "dia box p -> p"), 0),
        (("decide", "local", "--ctx", "p", "box p"), 1),
        (("decide", "global", "--ctx", "p", "box p"), 0),
        (("decide", "valid", "p -> box p"), 1),
        (("decide", "valid", "p ->"), 2),
    ]:
        checks[f"exit {code}: {' '.join(argv)}"] = _cli(*argv).returncode == code
    bad = [k for k, v in checks.items() if not v]
    report(9, "CLI end-to-end", not bad, f"{len(checks) - len(bad)}/{len(checks)} checks" + (f", failed: {bad}" if bad else ""))
    assert not bad, bad
