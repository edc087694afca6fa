#!/usr/bin/env python3
"""Export a curve sample from Cremona's tables into the bundled CSV format.

Input is the sqlite file `cremona_mini.db` that ships with the Sage/passagemath
elliptic-curve database (tables t_class and t_curve).  Column mapping:

    t_curve.curve    -> label        (Cremona label, e.g. 11a3)
    t_class.conductor-> conductor
    t_curve.eqn      -> a1,a2,a3,a4,a6  (stored as "[a1,a2,a3,a4,a6]")
    t_curve.tors     -> torsion_order (optional 8th column, cross-check only)

Usage: make_sample_db.py cremona_mini.db out.csv [max_conductor]
"""
import sqlite3
import sys


def label_key(label):
    # 11a3 -> (11, "a", 3); class letters may be multi-character (e.g. "ba")
    i = 0
    while label[i].isdigit():
        i += 1
    j = len(label)
    while label[j - 1].isdigit():
        j -= 1
    cls = label[i:j]
    return (int(label[:i]), len(cls), cls, int(label[j:]))


def main():
    db, out = sys.argv[1], sys.argv[2]
    bound = int(sys.argv[3]) if len(sys.argv) > 3 else 1000
    con = sqlite3.connect(db)
    rows = con.execute(
        "select c.curve, k.conductor, c.eqn, c.tors from t_curve c "
        "join t_class k on c.class = k.class where k.conductor <= ?", (bound,)
    ).fetchall()
    rows.sort(key=lambda r: label_key(r[0]))
    with open(out, "w") as fh:
        fh.write("# label,conductor,a1,a2,a3,a4,a6,torsion_order\n")
        fh.write("# source: J. E. Cremona, elliptic curve data (cremona_mini.db)\n")
        for label, cond, eqn, tors in rows:
            a = [int(v) for v in eqn.strip("[]").split(",")]
            fh.write(",".join([label, str(cond)] + [str(v) for v in a] + [str(tors)]) + "\n")
    print(f"wrote {len(rows)} curves with conductor <= {bound}")


if __name__ == "__main__":
    main()
