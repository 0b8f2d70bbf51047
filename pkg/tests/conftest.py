from sympy import totient

GRID_M = (2, 3, 4, 5, 6, 7, 8, 9, 12)
GRID_K = (1, 2)
GRID_MAX_N = 14


def grid():
    return [(m, k) for m in GRID_M for k in GRID_K if k * int(totient(m)) <= GRID_MAX_N]


def small_grid(max_n=6):
    return [(m, k) for m, k in grid() if k * int(totient(m)) <= max_n]


_reports = {}


def report_for(m, k):
    """Full reports are the slow part of the suite, so share them across test files."""
    from crystal_ktheory.lattice import cyclotomic_lattice
    from crystal_ktheory.report import build_report

    if (m, k) not in _reports:
        _reports[m, k] = build_report(cyclotomic_lattice(m, k))
    return _reports[m, k]
