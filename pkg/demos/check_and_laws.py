"""Check the shipped example file, then run a small law suite with and without a broken Π.

The broken Π drops the compatibility condition of the product and keeps every
combination of attribute families; the suite finds and shrinks a counterexample.
"""

from pathlib import Path

from simpdb.checker import check_file
from simpdb.gen import GenConfig
from simpdb.laws import format_report, run_laws
from simpdb.mutants import mutant_ops

DATA = Path(__file__).resolve().parent.parent / "src" / "simpdb" / "data"


def main():
    print(check_file(DATA / "si.sdb").format())
    print(check_file(DATA / "bad_premise.sdb").format())
    cfg = GenConfig(cases=200)
    laws = ["pi-subst", "pi-ap-lambda", "pi-eta", "pi-bijection"]
    print(format_report(cfg, run_laws(cfg, laws)))
    print("with the compatibility condition removed from Π:")
    print(format_report(cfg, run_laws(cfg, laws, mutant_ops("pi-no-compat"))))


if __name__ == "__main__":
    main()
