"""Run the differential property suites on a small universe.

Every suite enumerates types up to a size bound, checks one family of
properties exhaustively (plus seeded samples where exhaustion is out of
reach), and returns a report with the case count and any counterexamples.
The CLI exposes the same thing as `itsub suite <name>`.

At the default sizes the full sweep takes a few minutes; this demo trims
the bound so it finishes in seconds.
"""

from itsub.suites import SUITE_NAMES, run_suite


def main() -> None:
    for name in SUITE_NAMES:
        rep = run_suite(name, atoms=2, max_size=1, seed=0)
        print(rep.to_text())


if __name__ == "__main__":
    main()
