#!/usr/bin/env python3
"""Solve an exported .lp file with scipy's HiGHS interface.

Reads the LP text the toolkit writes (Minimize / Subject To / Bounds /
Binaries / Generals), solves it, and emits one `name value` line per
variable -- exactly the shape `crn ... --import` expects. Exits 0 with a
solution, 2 when the program is infeasible, 3 when a limit ran out with
nothing to show, 4 on unbounded.
"""

import argparse
import re
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def split_sections(text):
    sections = {"objective": [], "rows": [], "bounds": [], "binaries": [], "generals": []}
    sense = "minimize"
    current = None
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0]
        stripped = line.strip().lower()
        if not line.strip():
            continue
        if stripped in ("minimize", "maximize"):
            sense = stripped
            current = "objective"
        elif stripped == "subject to" or stripped in ("st", "s.t."):
            current = "rows"
        elif stripped == "bounds":
            current = "bounds"
        elif stripped in ("binaries", "binary"):
            current = "binaries"
        elif stripped in ("generals", "general"):
            current = "generals"
        elif stripped == "end":
            current = None
        elif current is None:
            raise ValueError(f"unexpected line outside any section: {raw!r}")
        else:
            sections[current].append(line)
    return sections, sense


class Names:
    def __init__(self):
        self.index = {}
        self.order = []

    def __call__(self, name):
        if name not in self.index:
            self.index[name] = len(self.order)
            self.order.append(name)
        return self.index[name]


def parse_expr(tokens, names):
    terms = []
    sign = 1.0
    coef = None
    for tok in tokens:
        if tok == "+":
            sign = 1.0
        elif tok == "-":
            sign = -sign
        elif NUMBER.match(tok):
            if coef is not None:
                raise ValueError(f"two coefficients in a row near {tok!r}")
            coef = float(tok)
        else:
            terms.append((names(tok), sign * (1.0 if coef is None else coef)))
            sign, coef = 1.0, None
    if coef is not None:
        raise ValueError("dangling coefficient in expression")
    return terms


def parse_rows(lines, names):
    tokens = " ".join(lines).split()
    rows = []
    pos = 0
    while pos < len(tokens):
        head = tokens[pos]
        if not head.endswith(":"):
            raise ValueError(f"expected a row label, found {head!r}")
        pos += 1
        expr = []
        while pos < len(tokens) and tokens[pos] not in ("<=", ">=", "=", "<", ">"):
            expr.append(tokens[pos])
            pos += 1
        if pos >= len(tokens):
            raise ValueError(f"row {head!r} has no comparison")
        sense = tokens[pos]
        rhs = float(tokens[pos + 1])
        pos += 2
        rows.append((head[:-1], parse_expr(expr, names), sense, rhs))
    return rows


def parse_bounds_line(line, names, lb, ub):
    toks = line.split()
    inf = float("inf")

    def value(tok):
        if tok.lower() in ("-inf", "-infinity"):
            return -inf
        if tok.lower() in ("inf", "infinity", "+inf", "+infinity"):
            return inf
        return float(tok)

    if len(toks) == 2 and toks[1].lower() == "free":
        j = names(toks[0])
        lb[j], ub[j] = -inf, inf
    elif len(toks) == 3 and toks[1] == "=":
        j = names(toks[0])
        lb[j] = ub[j] = value(toks[2])
    elif len(toks) == 3 and toks[1] == "<=":
        ub[names(toks[0])] = value(toks[2])
    elif len(toks) == 3 and toks[1] == ">=":
        lb[names(toks[0])] = value(toks[2])
    elif len(toks) == 5 and toks[1] == "<=" and toks[3] == "<=":
        j = names(toks[2])
        lb[j], ub[j] = value(toks[0]), value(toks[4])
    else:
        raise ValueError(f"unrecognized bounds line: {line.strip()!r}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lpfile", help="LP file to solve")
    ap.add_argument("out", nargs="?", help="solution file (default: stdout)")
    ap.add_argument("--time-limit", type=float, default=None, help="seconds")
    args = ap.parse_args()

    with open(args.lpfile) as fh:
        sections, sense = split_sections(fh.read())
    if sense == "maximize":
        sys.exit("maximize programs are not produced by this toolkit")

    names = Names()
    obj_tokens = " ".join(sections["objective"]).split()
    if obj_tokens and obj_tokens[0].endswith(":"):
        obj_tokens = obj_tokens[1:]
    obj_terms = parse_expr(obj_tokens, names)
    rows = parse_rows(sections["rows"], names)

    # bounds may mention variables the expressions never touched
    lb, ub = {}, {}
    for line in sections["bounds"]:
        parse_bounds_line(line, names, lb, ub)
    binaries = [names(t) for line in sections["binaries"] for t in line.split()]
    generals = [names(t) for line in sections["generals"] for t in line.split()]

    n = len(names.order)
    c = np.zeros(n)
    for j, a in obj_terms:
        c[j] += a

    lo = np.zeros(n)
    hi = np.full(n, np.inf)
    for j, v in lb.items():
        lo[j] = v
    for j, v in ub.items():
        hi[j] = v
    integrality = np.zeros(n)
    for j in binaries:
        lo[j], hi[j] = 0.0, 1.0
        integrality[j] = 1
    for j in generals:
        integrality[j] = 1

    constraints = None
    if rows:
        data, ri, ci = [], [], []
        row_lo, row_hi = [], []
        for r, (_, terms, s, rhs) in enumerate(rows):
            for j, a in terms:
                data.append(a)
                ri.append(r)
                ci.append(j)
            if s in ("<=", "<"):
                row_lo.append(-np.inf)
                row_hi.append(rhs)
            elif s in (">=", ">"):
                row_lo.append(rhs)
                row_hi.append(np.inf)
            else:
                row_lo.append(rhs)
                row_hi.append(rhs)
        mat = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))
        constraints = LinearConstraint(mat, row_lo, row_hi)

    options = {}
    if args.time_limit is not None:
        options["time_limit"] = args.time_limit
    res = milp(c=c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lo, hi), options=options)

    if res.status == 2:
        print("infeasible", file=sys.stderr)
        sys.exit(2)
    if res.status == 3:
        print("unbounded", file=sys.stderr)
        sys.exit(4)
    if res.x is None:
        print(f"no solution: {res.message}", file=sys.stderr)
        sys.exit(3 if res.status == 1 else 1)

    out = open(args.out, "w") if args.out else sys.stdout
    try:
        print(f"# objective {res.fun:.17g}", file=out)
        for name in names.order:
            print(f"{name} {res.x[names.index[name]]:.17g}", file=out)
    finally:
        if args.out:
            out.close()


if __name__ == "__main__":
    main()
