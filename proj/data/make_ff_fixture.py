#!/usr/bin/env python3
"""Rebuild ff_annual_factors.csv from the monthly Fama/French 3-factor returns
shipped inside the linearmodels package (datasets/french/french.csv.bz2).

Usage: make_ff_fixture.py [path/to/linearmodels.whl | path/to/french.csv.bz2]

Annual factors are compounded from the monthly series:
  RF     = prod(1 + RF_m) - 1
  Mkt-RF = prod(1 + MktRF_m + RF_m) - 1 - RF
  SMB    = prod(1 + SMB_m) - 1
  HML    = prod(1 + HML_m) - 1
ff_annual_factors.csv mimics the layout of the data library's CSV downloads:
a text preamble, the monthly block, then an "Annual Factors" block, in percent.
ff_1964_2015.csv is the plain table (Mkt-RF, SMB, RF) for 1964-2015.
"""
import bz2
import csv
import io
import sys
import zipfile
from collections import defaultdict
from pathlib import Path

MEMBER = "linearmodels/datasets/french/french.csv.bz2"


def load(source):
    if source is None:
        import linearmodels.datasets.french as french  # noqa: F401

        source = Path(french.__file__).with_name("french.csv.bz2")
    source = Path(source)
    raw = source.read_bytes()
    if source.suffix == ".whl":
        raw = zipfile.ZipFile(source).read(MEMBER)
    return list(csv.DictReader(io.StringIO(bz2.decompress(raw).decode())))


def main():
    rows = load(sys.argv[1] if len(sys.argv) > 1 else None)
    out = Path(__file__).with_name("ff_annual_factors.csv")
    monthly = []
    by_year = defaultdict(list)
    for r in rows:
        y, m = int(r["dates"][:4]), int(r["dates"][5:7])
        vals = {k: float(r[k]) for k in ("MktRF", "SMB", "HML", "RF")}
        monthly.append((y, m, vals))
        by_year[y].append(vals)

    def comp(xs):
        p = 1.0
        for x in xs:
            p *= 1.0 + x
        return p - 1.0

    lines = [
        "This file was created from monthly Fama/French 3-factor returns (linearmodels package copy)",
        "by compounding to calendar years; see make_ff_fixture.py.",
        "",
        ",Mkt-RF,SMB,HML,RF",
    ]
    for y, m, v in monthly:
        lines.append(f"{y}{m:02d},{100*v['MktRF']:8.2f},{100*v['SMB']:8.2f},{100*v['HML']:8.2f},{100*v['RF']:8.2f}")
    lines += ["", " Annual Factors: January-December ", ",Mkt-RF,SMB,HML,RF"]
    for y in sorted(by_year):
        vs = by_year[y]
        if len(vs) != 12:
            continue
        rf = comp(v["RF"] for v in vs)
        mkt = comp(v["MktRF"] + v["RF"] for v in vs) - rf
        smb = comp(v["SMB"] for v in vs)
        hml = comp(v["HML"] for v in vs)
        lines.append(f"{y},{100*mkt:8.2f},{100*smb:8.2f},{100*hml:8.2f},{100*rf:8.2f}")
    lines.append("")
    out.write_text("\r\n".join(lines))
    print(f"wrote {out}")

    plain = ["Mkt-RF,SMB,RF"]
    for line in lines:
        f = [c.strip() for c in line.split(",")]
        if len(f) == 5 and len(f[0]) == 4 and f[0].isdigit() and 1964 <= int(f[0]) <= 2015:
            plain.append(",".join((f[1], f[2], f[4])))
    table = out.with_name("ff_1964_2015.csv")
    table.write_text("\n".join(plain) + "\n")
    print(f"wrote {table} ({len(plain) - 1} rows)")


if __name__ == "__main__":
    main()
