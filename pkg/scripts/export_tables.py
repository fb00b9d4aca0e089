"""Write connection tables and the dimension table as CSV into a directory."""
import argparse
from pathlib import Path

from polymaass import connection as cn
from polymaass import structure as sm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--nmax", type=int, default=7)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for k in (2, 4, 6):
        for b in (cn.Boundary.ZERO, cn.Boundary.BINOMIAL):
            path = args.outdir / f"ctable_k{k}_{b.value}.csv"
            path.write_text(cn.table_to_csv(cn.solve_table(k, b, args.nmax)))
            print(path)
    path = args.outdir / "dims.csv"
    path.write_text(sm.dims_to_csv(sm.dims_table(-26, 26, 16)))
    print(path)


if __name__ == "__main__":
    main()
