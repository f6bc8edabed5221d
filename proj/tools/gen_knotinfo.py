"""Dump reference PD codes and HOMFLY polynomials for prime knots through 11 crossings.

Writes a TSV with columns name, crossings, pd, homfly. The PD code uses the
library's token format (tuples separated by ';', labels by ','). KnotInfo
states HOMFLY in (v, z) with v^-1 P(L+) - v P(L-) = z P(L0); substituting
a = v^-1 gives a P(L+) - a^-1 P(L-) = z P(L0), the convention used here.
"""

import argparse
import json
import sys

import sympy
from database_knotinfo import link_list


def convert_homfly(text):
    v, z, a = sympy.symbols("v z a")
    expr = sympy.sympify(text.replace("^", "**"), locals={"v": v, "z": z})
    expr = sympy.expand(expr.subs(v, 1 / a))
    terms = {}
    for term in sympy.Add.make_args(expr):
        coef, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        key = (int(powers.get(a, 0)), int(powers.get(z, 0)))
        terms[key] = terms.get(key, 0) + int(coef)
    parts = [f"{c}*a^{p}*z^{q}" for (p, q), c in sorted(terms.items()) if c != 0]
    return "+".join(parts)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-crossings", type=int, default=11)
    parser.add_argument("--out", default="-")
    args = parser.parse_args()

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    out.write("name\tcrossings\tpd\thomfly\n")
    out.write("0_1\t0\t\t1*a^0*z^0\n")
    for row in link_list()[2:]:
        c = int(row["crossing_number"])
        if c > args.max_crossings:
            break
        pd = json.loads(row["pd_notation"])
        code = ";".join(",".join(str(x) for x in t) for t in pd)
        out.write(f"{row['name']}\t{c}\t{code}\t{convert_homfly(row['homfly_polynomial'])}\n")


if __name__ == "__main__":
    main()
