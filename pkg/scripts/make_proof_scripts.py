"""Regenerate the shipped proof scripts under proofs/.

    python scripts/make_proof_scripts.py

The checked-in files must match this output byte for byte (see
tests/test_cli.py).
"""

import pathlib

from s5kit.lemmas import script_library
from s5kit.script import to_script

ROOT = pathlib.Path(__file__).resolve().parent.parent / "proofs"

LIBRARY_HEADER = """\
# S5 theorem library, generated by scripts/make_proof_scripts.py.
# Check with:  s5kit check proofs/s5_library.s5p
"""

FAILING = """\
# Necessitation applied under an assumption.  Rejected with the default
# --nec-mode restricted (nec only applies to theorems), accepted with
# --nec-mode unrestricted.
theorem nec_under_assumption
context: p0
1: p0  ax
2: box p0  nec 1
"""


def library_text() -> str:
    return LIBRARY_HEADER + "".join("\n" + to_script(name, d) for name, d in script_library())


def main() -> None:
    ROOT.mkdir(exist_ok=True)
    (ROOT / "s5_library.s5p").write_text(library_text(), encoding="utf-8")
    (ROOT / "nec_in_context.s5p").write_text(FAILING, encoding="utf-8")


if __name__ == "__main__":
    main()
