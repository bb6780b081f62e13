#!/usr/bin/env python3
"""Convert the raw UCI dumps under data/raw/ into the bundled fixtures.

Each fixture is a directory with ``data.csv`` (header row, comma separated)
and ``schema.txt`` (one line per CSV column: ``name kind [v1|v2|...]``).
``data/fixtures/suite.json`` lists every fixture with its true cluster count.

Sources of the raw files:
  hayes-roth_learn.tab, zoo.tab, breast-cancer.tab, lymphography.tab,
  tic_tac_toe.tab, car.tab, crx.tab   -- Orange 2.7.8 source distribution
  house-votes-84.data                 -- UCI file shipped with the npm ``kmodes`` package
  chess.dat, mushroom.dat             -- KEEL copies shipped with the ``keel_ds`` wheel

Soybean (small) is not bundled. Drop the UCI ``soybean-small.data`` file into
data/raw/ and rerun this script to produce data/fixtures/sb/.
"""

import csv
import json
import os
import re

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
RAW = os.path.join(ROOT, "data", "raw")
OUT = os.path.join(ROOT, "data", "fixtures")


def read_tab(name):
    with open(os.path.join(RAW, name), newline="") as fh:
        rows = [line.rstrip("\n").split("\t") for line in fh]
    header = [h.strip() for h in rows[0]]
    body = [[c.strip() for c in r] for r in rows[3:] if any(c.strip() for c in r)]
    return header, body


def read_csv(name):
    with open(os.path.join(RAW, name), newline="") as fh:
        return [[c.strip() for c in r] for r in csv.reader(fh) if r]


def numeric_key(value):
    m = re.match(r"-?\d+", value)
    return int(m.group()) if m else 0


def write_fixture(key, header, rows, kinds, orders=None):
    orders = orders or {}
    path = os.path.join(OUT, key)
    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, "data.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    with open(os.path.join(path, "schema.txt"), "w") as fh:
        fh.write("# column  kind  [semantic order, lowest first]\n")
        for col, name in enumerate(header):
            kind = kinds[name]
            line = f"{name} {kind}"
            if kind == "ordinal":
                observed = {r[col] for r in rows if r[col] != ""}
                order = orders.get(name) or sorted(observed, key=numeric_key)
                order = [v for v in order if v in observed]
                line += " " + "|".join(order)
            fh.write(line + "\n")


def hayes_roth():
    header, rows = read_tab("hayes-roth_learn.tab")
    header[-1] = "class"
    kinds = {"name": "ignore", "hobby": "nominal", "age": "ordinal",
             "education": "ordinal", "marital": "ordinal", "class": "label"}
    write_fixture("hr", header, rows, kinds)
    return {"name": "HR", "dir": "hr", "k": 3}


def zoo():
    header, rows = read_tab("zoo.tab")
    kinds = {h: "nominal" for h in header}
    kinds["name"] = "ignore"
    kinds["type"] = "label"
    write_fixture("zo", header, rows, kinds)
    return {"name": "ZO", "dir": "zo", "k": 7}


def breast_cancer():
    header, rows = read_tab("breast-cancer.tab")
    # Missing entries are kept as the literal value '?', as in the UCI file.
    rows = [[c if c != "" else "?" for c in r] for r in rows]
    kinds = {h: "nominal" for h in header}
    kinds["recurrence"] = "label"
    for h in ("age", "tumor-size", "inv-nodes", "deg-malig"):
        kinds[h] = "ordinal"
    write_fixture("bc", header, rows, kinds)
    return {"name": "BC", "dir": "bc", "k": 2}


def lymphography():
    header, rows = read_tab("lymphography.tab")
    header[0] = "class"
    kinds = {h: "nominal" for h in header}
    kinds["class"] = "label"
    for h in ("lym_dimin", "lym_enlar", "no_nodes"):
        kinds[h] = "ordinal"
    write_fixture("lg", header, rows, kinds)
    return {"name": "LG", "dir": "lg", "k": 4}


def tic_tac_toe():
    header, rows = read_tab("tic_tac_toe.tab")
    header[-1] = "class"
    kinds = {h: "nominal" for h in header}
    kinds["class"] = "label"
    write_fixture("tt", header, rows, kinds)
    return {"name": "TT", "dir": "tt", "k": 2}


def credit():
    header, rows = read_tab("crx.tab")
    header[-1] = "class"
    # '?' marks a missing entry here; written as an empty cell so the loader drops the row.
    rows = [[c if c != "?" else "" for c in r] for r in rows]
    kinds = {h: "nominal" for h in header}
    for h in ("A2", "A3", "A8", "A11", "A14", "A15"):
        kinds[h] = "numerical"
    kinds["A5"] = "ignore"  # one-to-one recoding of A4
    kinds["class"] = "label"
    write_fixture("ac", header, rows, kinds)
    return {"name": "AC", "dir": "ac", "k": 2, "mixed": True}


def voting():
    rows = read_csv("house-votes-84.data")
    header = ["party"] + [f"v{j:02d}" for j in range(1, 17)]
    kinds = {h: "nominal" for h in header}
    kinds["party"] = "label"
    write_fixture("vt", header, rows, kinds)
    return {"name": "VT", "dir": "vt", "k": 2}


def chess():
    rows = read_csv("chess.dat")
    header = [f"a{j:02d}" for j in range(1, 37)] + ["class"]
    kinds = {h: "nominal" for h in header}
    kinds["class"] = "label"
    write_fixture("cc", header, rows, kinds)
    return {"name": "CC", "dir": "cc", "k": 2}


def car():
    header, rows = read_tab("car.tab")
    header[-1] = "class"
    kinds = {h: "ordinal" for h in header}
    kinds["class"] = "label"
    orders = {
        "buying": ["low", "med", "high", "v-high"],
        "maint": ["low", "med", "high", "v-high"],
        "doors": ["2", "3", "4", "5-more"],
        "persons": ["2", "4", "more"],
        "lugboot": ["small", "med", "big"],
        "safety": ["low", "med", "high"],
    }
    write_fixture("car", header, rows, kinds, orders)
    return {"name": "CAR", "dir": "car", "k": 4}


def mushroom():
    rows = read_csv("mushroom.dat")
    header = [f"m{j:02d}" for j in range(1, 23)] + ["class"]
    kinds = {h: "nominal" for h in header}
    kinds["class"] = "label"
    write_fixture("mr", header, rows, kinds)
    return {"name": "MR", "dir": "mr", "k": 2}


def soybean():
    path = os.path.join(RAW, "soybean-small.data")
    if not os.path.exists(path):
        return None
    rows = read_csv("soybean-small.data")
    header = [f"s{j:02d}" for j in range(1, 36)] + ["class"]
    kinds = {h: "nominal" for h in header}
    kinds["class"] = "label"
    write_fixture("sb", header, rows, kinds)
    return {"name": "SB", "dir": "sb", "k": 4}


def main():
    entries = [hayes_roth(), zoo(), breast_cancer(), lymphography(), tic_tac_toe(),
               credit(), voting(), chess(), car(), mushroom()]
    sb = soybean()
    if sb:
        entries.insert(0, sb)
    with open(os.path.join(OUT, "suite.json"), "w") as fh:
        json.dump({"runs": 10, "base_seed": 1, "datasets": entries}, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
