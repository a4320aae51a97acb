"""Single-step corruptions of a resolution used to exercise verification."""

from solvres.resolution import Resolution


def _matrices(R):
    return [[list(row) for row in st.matrix] for st in R.steps]


def with_redundant_generator(R, step: int = 0):
    """Duplicate the first row of map ``step + 1``; the next map gets a zero column."""
    mats = _matrices(R)
    mats[step].append(list(mats[step][0]))
    if step + 1 < len(mats):
        zero = R.algebra.poly()
        for row in mats[step + 1]:
            row.append(zero)
    return Resolution.from_matrices(R.algebra, R.base, mats, relations=R.relations, module_name=R.module_name)


def truncated(R):
    """Drop the last map."""
    mats = _matrices(R)[:-1]
    return Resolution.from_matrices(R.algebra, R.base, mats, relations=R.relations, module_name=R.module_name)
