from hypothesis import strategies as st

from cjlogic.syntax import BOTTOM, And, Atom, ImpC, ImpI, Or

ATOM_NAMES = ("p", "q", "r")

_BINARY = (And, Or, ImpI, ImpC)


def formulas(names=ATOM_NAMES, connectives=_BINARY, max_leaves=12):
    leaves = st.sampled_from([Atom(n) for n in names]) | st.just(BOTTOM)
    return st.recursive(
        leaves,
        lambda sub: st.one_of(*[st.builds(c, sub, sub) for c in connectives]),
        max_leaves=max_leaves,
    )


# One line per acceptance criterion, printed in the terminal summary.
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0].split()[0][2:])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
