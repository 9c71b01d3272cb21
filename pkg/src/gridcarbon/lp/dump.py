"""Plain-text dump of a linear program for debugging against other solvers.

Format, one item per line, fields separated by single spaces::

    # <problem name>
    min <constant> <var>:<cost> ...
    var <name> <lower> <upper>
    row <name> <relation> <rhs> <var>:<coef> ...

Numbers use ``repr`` so the dump round-trips exactly; infinite bounds are
written as ``inf``/``-inf``.
"""

from pathlib import Path

from .problem import LinearProgram


def _num(value: float) -> str:
    return repr(float(value))


def format_lp_text(lp: LinearProgram) -> str:
    """Render a problem in the dump format."""
    lines = [f"# {lp.name}"]
    costs = " ".join(f"{v.name}:{_num(v.cost)}" for v in lp.variables if v.cost)
    lines.append(f"min {_num(lp.objective_constant)} {costs}".rstrip())
    for var in lp.variables:
        lines.append(f"var {var.name} {_num(var.lower)} {_num(var.upper)}")
    for row in lp.rows:
        terms = " ".join(f"{name}:{_num(coef)}" for name, coef in row.coefficients)
        lines.append(f"row {row.name} {row.relation.value} {_num(row.rhs)} {terms}".rstrip())
    return "\n".join(lines) + "\n"


def write_lp_text(lp: LinearProgram, path: Path) -> Path:
    """Write a problem dump to ``path`` and return it."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_lp_text(lp), encoding="utf-8")
    return path
