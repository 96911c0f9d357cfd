"""Regenerate the frozen Gauss-Legendre node/weight tables in msdcost.oracle.

Nodes are the roots of the Legendre polynomial P_m on [-1, 1], weights
w_i = 2 / ((1 - x_i^2) P_m'(x_i)^2), computed with mpmath at 40 decimal
digits and printed as 25-digit literals (enough that the parsed doubles
are correctly rounded).  Run and paste the output over the table in
src/msdcost/oracle.py.
"""

import mpmath as mp

MAX_NODES = 16

mp.mp.dps = 40


def legendre_nodes(m):
    poly = mp.taylor(lambda x: mp.legendre(m, x), 0, m)
    roots = mp.polyroots(poly[::-1])
    return sorted(r.real for r in roots)


def main():
    print("_GL_TABLE = {")
    for m in range(1, MAX_NODES + 1):
        xs = legendre_nodes(m)
        ws = []
        for x in xs:
            dp = mp.diff(lambda t: mp.legendre(m, t), x)
            ws.append(2 / ((1 - x ** 2) * dp ** 2))
        fmt = lambda v: mp.nstr(v, 25, strip_zeros=False)
        tail = "," if m == 1 else ""
        print(f"    {m}: (")
        print("        (" + ", ".join(fmt(x) for x in xs) + tail + "),")
        print("        (" + ", ".join(fmt(w) for w in ws) + tail + "),")
        print("    ),")
    print("}")


if __name__ == "__main__":
    main()
