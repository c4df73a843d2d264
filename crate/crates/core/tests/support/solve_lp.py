#!/usr/bin/env python3
"""Parse an LP-format model (the subset teamform emits) and solve it with
scipy's HiGHS MILP backend. Prints "OBJECTIVE <value>" or "INFEASIBLE".

Usage: solve_lp.py model.lp
"""

import re
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

TERM = re.compile(r"([+-])?\s*(\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)?\s*([A-Za-z]\w*)")


def parse_expr(text):
    """Returns {var: coefficient} for a linear expression."""
    coefs = {}
    for sign, coef, var in TERM.findall(text):
        value = float(coef) if coef else 1.0
        if sign == "-":
            value = -value
        coefs[var] = coefs.get(var, 0.0) + value
    return coefs


def main(path):
    objective = {}
    constraints = []  # (coefs, sense, rhs)
    binaries = set()
    section = None
    with open(path) as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("\\"):
                continue
            lowered = line.lower()
            if lowered in ("minimize", "subject to", "bounds", "binary", "end"):
                section = lowered
                continue
            if section == "minimize":
                body = line.split(":", 1)[1] if ":" in line else line
                objective.update(parse_expr(body))
            elif section == "subject to":
                body = line.split(":", 1)[1] if ":" in line else line
                match = re.search(r"(<=|>=|=)\s*([+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)\s*$", body)
                if not match:
                    raise ValueError(f"cannot parse constraint: {line}")
                sense, rhs = match.group(1), float(match.group(2))
                constraints.append((parse_expr(body[: match.start()]), sense, rhs))
            elif section == "binary":
                binaries.add(line)

    variables = sorted(set(objective) | binaries | {v for c, _, _ in constraints for v in c})
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)

    c = np.zeros(n)
    for var, coef in objective.items():
        c[index[var]] = coef

    rows, cols, data, lower, upper = [], [], [], [], []
    for row, (coefs, sense, rhs) in enumerate(constraints):
        for var, coef in coefs.items():
            rows.append(row)
            cols.append(index[var])
            data.append(coef)
        if sense == "<=":
            lower.append(-np.inf)
            upper.append(rhs)
        elif sense == ">=":
            lower.append(rhs)
            upper.append(np.inf)
        else:
            lower.append(rhs)
            upper.append(rhs)

    a = sparse.csr_matrix((data, (rows, cols)), shape=(len(constraints), n))
    integrality = np.array([1 if v in binaries else 0 for v in variables])
    lb = np.zeros(n)
    ub = np.array([1.0 if v in binaries else np.inf for v in variables])

    result = milp(
        c=c,
        constraints=LinearConstraint(a, np.array(lower), np.array(upper)),
        integrality=integrality,
        bounds=Bounds(lb, ub),
        options={"mip_rel_gap": 0.0},
    )
    if result.status == 0:
        print(f"OBJECTIVE {result.fun:.12f}")
    else:
        print("INFEASIBLE")


if __name__ == "__main__":
    main(sys.argv[1])
