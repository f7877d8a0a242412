#!/usr/bin/env python3
"""Regenerates the bundled fixtures under data/.

    python3 tools/gen_fixtures.py [DATA_DIR]

Outputs are deterministic; rerunning must not change any committed file.
"""

import csv
import json
import random
import sys
from pathlib import Path

BATTING_HEADER = [
    "player_name", "country", "span", "matches", "innings", "not_outs", "runs",
    "highest_score", "average", "balls_faced", "strike_rate", "one_hundred",
    "fifty", "ducks",
]

# ODI career batting figures. Blank average = never dismissed.
BATTING = [
    ["SR Tendulkar", "INDIA", "1989-2012", 463, 452, 41, 18426, "200*", 44.83, 21367, 86.23, 49, 96, 20],
    ["KC Sangakkara", "SL", "2000-2015", 404, 380, 41, 14234, "169", 41.98, 18048, 78.86, 25, 93, 15],
    ["RT Ponting", "AUS", "1995-2012", 375, 365, 39, 13704, "164", 42.03, 17046, 80.39, 30, 82, 20],
    ["ST Jayasuriya", "SL", "1989-2011", 445, 433, 18, 13430, "189", 32.36, 14725, 91.20, 28, 68, 34],
    ["DPMD Jayawardene", "SL", "1998-2015", 448, 418, 39, 12650, "144", 33.37, 16020, 78.96, 19, 77, 28],
    ["V Kohli", "INDIA", "2008-2019", 239, 230, 31, 11867, "183", 59.84, 12722, 93.28, 43, 55, 13],
    ["Inzamam-ul-Haq", "PAK", "1991-2007", 378, 350, 53, 11739, "137*", 39.52, 15812, 74.24, 10, 83, 20],
    ["JH Kallis", "SA", "1996-2014", 328, 314, 53, 11579, "139", 44.36, 15885, 72.89, 17, 86, 17],
    ["SC Ganguly", "INDIA", "1992-2007", 311, 300, 23, 11363, "183", 41.02, 15416, 73.70, 22, 72, 16],
    ["R Dravid", "INDIA", "1996-2011", 344, 318, 40, 10889, "153", 39.16, 15285, 71.24, 12, 83, 13],
    ["MS Dhoni", "INDIA", "2004-2019", 350, 297, 84, 10773, "183*", 50.57, 12303, 87.56, 10, 73, 10],
    ["CH Gayle", "WI", "1999-2019", 301, 294, 17, 10480, "215", 37.83, 10834, 87.19, 25, 54, 25],
    ["BC Lara", "WI", "1990-2007", 299, 289, 32, 10405, "169", 40.48, 13086, 79.51, 19, 63, 16],
    ["TM Dilshan", "SL", "1999-2016", 330, 303, 41, 10290, "161*", 39.27, 11933, 86.23, 22, 47, 11],
    ["Mohammad Yousuf", "PAK", "1998-2010", 288, 273, 40, 9720, "141*", 41.71, 12942, 75.10, 15, 64, 15],
    ["AC Gilchrist", "AUS", "1996-2008", 287, 279, 11, 9619, "172", 35.89, 9922, 96.94, 16, 55, 19],
    ["AB de Villiers", "SA", "2005-2018", 228, 218, 39, 9577, "176", 53.50, 9473, 101.09, 25, 53, 7],
    ["M Azharuddin", "INDIA", "1985-2000", 334, 308, 54, 9378, "153*", 36.92, 12669, 74.02, 7, 58, 9],
    ["PA de Silva", "SL", "1984-2003", 308, 296, 30, 9284, "145", 34.90, 11443, 81.13, 11, 64, 17],
    ["RG Sharma", "INDIA", "2007-2019", 206, 199, 30, 8010, "264", 47.39, 9008, 88.92, 28, 38, 12],
    ["Saeed Anwar", "PAK", "1989-2003", 247, 244, 19, 8824, "194", 39.21, 10938, 80.67, 20, 43, 15],
    ["S Chanderpaul", "WI", "1994-2011", 268, 251, 40, 8778, "150", 41.60, 12408, 70.74, 11, 59, 6],
    ["Yuvraj Singh", "INDIA", "2000-2017", 304, 278, 40, 8701, "150", 36.55, 9924, 87.67, 14, 52, 18],
    ["DR Martyn", "AUS", "1992-2006", 208, 182, 51, 5346, "144*", 40.80, 6841, 78.14, 5, 37, 4],
    ["MP O'Dowd", "NL", "2019-2019", 2, 2, 1, 145, "86*", 145.00, 170, 85.29, 0, 2, 0],
    ["AL Kandappah", "SL", "1999-1999", 4, 3, 2, 90, "61*", 90.00, 120, 75.00, 0, 1, 0],
    ["Aamer Yamin", "PAK", "2015-2016", 4, 3, 2, 88, "62*", 88.00, 89, 98.95, 0, 1, 0],
    ["KJ Barnett", "ENG", "1988-1988", 1, 1, 0, 84, "84", 84.00, 140, 60.00, 0, 1, 0],
    ["CT Radley", "ENG", "1978-1978", 4, 4, 1, 250, "117*", 83.33, 436, 57.34, 1, 1, 0],
    ["RJ Nicol", "NZ", "2011-2013", 22, 21, 1, 542, "146", 27.10, 680, 79.70, 1, 2, 3],
    ["JE Taylor", "WI", "2003-2016", 90, 47, 16, 278, "43*", 8.96, 364, 76.37, 0, 0, 8],
    ["DK Lillee", "AUS", "1972-1983", 63, 34, 8, 240, "42*", 9.23, 316, 75.94, 0, 0, 5],
    ["GD McGrath", "AUS", "1993-2007", 250, 68, 38, 115, "11", 3.83, 236, 48.72, 0, 0, 9],
    ["Imran Tahir", "SA", "2011-2019", 107, 36, 36, 157, "29", "", 206, 76.21, 0, 0, 0],
]

BOWLING_HEADER = [
    "Player", "Span", "Mat", "Inns", "Balls", "Runs", "Wkts", "BBI", "Ave",
    "Econ", "SR", "4w", "5w",
]

# ODI career bowling figures. Blank Ave/SR = no wickets.
BOWLING = [
    ["M Muralitharan (Asia/ICC/SL)", "1993-2011", 350, 341, 18811, 12326, 534, "7/30", 23.08, 3.93, 35.2, 15, 10],
    ["Wasim Akram (PAK)", "1984-2003", 356, 351, 18186, 11812, 502, "5/15", 23.52, 3.89, 36.2, 17, 6],
    ["Waqar Younis (PAK)", "1989-2003", 262, 258, 12698, 9919, 416, "7/36", 23.84, 4.68, 30.5, 14, 13],
    ["WPUJC Vaas (Asia/SL)", "1994-2008", 322, 320, 15775, 11014, 400, "8/19", 27.53, 4.18, 39.4, 9, 4],
    ["Shahid Afridi (Asia/ICC/PAK)", "1996-2015", 398, 372, 17670, 13632, 395, "7/12", 34.51, 4.62, 44.7, 4, 9],
    ["SM Pollock (Afr/ICC/SA)", "1996-2008", 303, 297, 15712, 9631, 393, "6/35", 24.50, 3.67, 39.9, 12, 5],
    ["GD McGrath (AUS/ICC)", "1993-2007", 250, 248, 12970, 8391, 381, "7/15", 22.02, 3.88, 34.0, 9, 7],
    ["B Lee (AUS)", "2000-2012", 221, 217, 11185, 8877, 380, "5/22", 23.36, 4.76, 29.4, 14, 9],
    ["SL Malinga (SL)", "2004-2019", 226, 220, 10936, 9760, 338, "6/38", 28.87, 5.35, 32.3, 11, 8],
    ["A Kumble (Asia/INDIA)", "1990-2007", 271, 265, 14496, 10412, 337, "6/12", 30.89, 4.30, 43.0, 8, 2],
    ["ST Jayasuriya (Asia/SL)", "1989-2011", 445, 368, 14874, 11871, 323, "6/29", 36.75, 4.78, 46.0, 8, 4],
    ["J Srinath (INDIA)", "1991-2003", 229, 227, 11935, 8847, 315, "5/23", 28.08, 4.44, 37.8, 6, 3],
    ["DL Vettori (ICC/NZ)", "1997-2015", 295, 277, 14060, 9674, 305, "5/7", 31.71, 4.12, 46.0, 8, 2],
    ["Saqlain Mushtaq (PAK)", "1995-2003", 169, 168, 8770, 6275, 288, "5/20", 21.78, 4.29, 30.4, 11, 6],
    ["Z Khan (Asia/INDIA)", "2000-2014", 200, 197, 10097, 8301, 282, "5/42", 29.43, 4.93, 35.8, 7, 1],
    ["JH Kallis (Afr/ICC/SA)", "1996-2014", 328, 283, 10750, 8680, 273, "5/30", 31.79, 4.84, 39.3, 2, 2],
    ["A Flintoff (ENG/ICC)", "1999-2009", 141, 119, 5624, 4121, 169, "5/19", 24.38, 4.39, 33.2, 2, 2],
    ["Imran Khan (PAK)", "1974-1992", 175, 153, 7461, 4844, 182, "6/14", 26.61, 3.89, 40.9, 3, 1],
    ["Kapil Dev (INDIA)", "1978-1994", 225, 221, 11202, 6945, 253, "5/43", 27.45, 3.71, 44.2, 3, 1],
    ["Imran Nazir (PAK)", "1999-2009", 79, 1, 6, 9, 0, "-", "", 9.00, "", 0, 0],
]


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([f"{v:.2f}" if isinstance(v, float) and h in ("average", "strike_rate", "Ave", "Econ") else v
                        for h, v in zip(header, r)])


# Gold query templates over the two fixture tables. {m}, {n}, {l}, {k}, {v}
# are filled from the per-table vocabularies below.
TEMPLATES = [
    ("Who are the top {k} by {m}?", "SELECT {l}, {m} FROM {t} ORDER BY {m} DESC LIMIT {k}"),
    ("List the bottom {k} by {m}.", "SELECT {l}, {m} FROM {t} ORDER BY {m} ASC LIMIT {k}"),
    ("What is the average {m}?", "SELECT AVG({m}) FROM {t}"),
    ("What is the total {m}?", "SELECT SUM({m}) FROM {t}"),
    ("What is the highest {m}?", "SELECT MAX({m}) FROM {t}"),
    ("How many rows have {m} above {v}?", "SELECT COUNT(*) FROM {t} WHERE {m} > {v}"),
    ("Show {l} with {m} at least {v}.", "SELECT {l}, {m} FROM {t} WHERE {m} >= {v} ORDER BY {m} DESC"),
    ("Show {l}, {m} and {n} for the top {k} by {m}.", "SELECT {l}, {m}, {n} FROM {t} ORDER BY {m} DESC LIMIT {k}"),
    ("Average {m} per {g}?", "SELECT {g}, AVG({m}) FROM {t} GROUP BY {g}"),
    ("Total {m} per {g}, highest first.", "SELECT {g}, SUM({m}) AS total FROM {t} GROUP BY {g} ORDER BY total DESC"),
    ("Number of rows per {g}.", "SELECT {g}, COUNT(*) FROM {t} GROUP BY {g}"),
    ("Which {l} have {m} between {v} and {w}?", "SELECT {l} FROM {t} WHERE {m} >= {v} AND {m} <= {w}"),
    ("Distinct {g} values.", "SELECT DISTINCT {g} FROM {t}"),
    ("Lowest {m} among rows with {n} above {u}?", "SELECT MIN({m}) FROM {t} WHERE {n} > {u}"),
]

TABLES = [
    {
        "t": "odi_batting",
        "l": ["player_name"],
        "g": ["country", "span"],
        "m": ["runs", "average", "strike_rate", "matches", "innings", "one_hundred", "fifty", "balls_faced"],
    },
    {
        "t": "bowling_odi",
        "l": ["Player"],
        "g": ["Span", "BBI"],
        "m": ["Wkts", "Ave", "Econ", "Mat", "Inns", "Balls", "Runs", "SR"],
    },
]

# Predictions that differ from gold in one surface detail; all still parse.
def perturb(rng, sql):
    choice = rng.randrange(6)
    if choice == 0 or "LIMIT" not in sql and choice == 1:
        return sql
    if choice == 1:
        head, _, k = sql.rpartition("LIMIT ")
        return head + "LIMIT " + str(int(k) + rng.choice([-1, 1, 5]))
    if choice == 2:
        return sql.lower()
    if choice == 3:
        return sql + ";"
    if choice == 4 and " DESC" in sql:
        return sql.replace(" DESC", " ASC", 1)
    return sql.replace("SELECT ", "SELECT  ", 1)


# Predicted SQL with one syntax fault each, still close to gold by BLEU.
BROKEN = [
    lambda s: s.replace(" FROM ", " FORM ", 1),
    lambda s: s.replace("SELECT ", "SELECT , ", 1),
    lambda s: s + " ORDER",
    lambda s: s.replace(" FROM ", " FROM ( ", 1),
    lambda s: s + " LIMIT ten",
]


def gen_pairs(rng, n_pairs, n_invalid):
    pairs = []
    while len(pairs) < n_pairs:
        table = rng.choice(TABLES)
        q_tpl, s_tpl = rng.choice(TEMPLATES)
        m, n = rng.sample(table["m"], 2)
        lo = rng.randrange(1, 60)
        fill = {
            "t": table["t"], "l": table["l"][0], "g": rng.choice(table["g"]),
            "m": m, "n": n, "k": rng.choice([3, 5, 10, 15, 20]),
            "v": lo, "w": lo + rng.randrange(5, 200), "u": rng.randrange(1, 40),
        }
        gold = s_tpl.format(**fill)
        pairs.append({
            "question": q_tpl.format(**fill),
            "gold_sql": gold,
            "predicted_sql": perturb(rng, gold),
        })
    bad = rng.sample(range(n_pairs), n_invalid)
    for i, idx in enumerate(sorted(bad)):
        pairs[idx]["predicted_sql"] = BROKEN[i](pairs[idx]["gold_sql"])
    return pairs


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "odi_batting.csv", BATTING_HEADER, BATTING)
    write_csv(out / "bowling_odi.csv", BOWLING_HEADER, BOWLING)
    rng = random.Random(20240617)
    with open(out / "eval_pairs.jsonl", "w", encoding="utf-8") as f:
        for p in gen_pairs(rng, 665, 5):
            f.write(json.dumps(p) + "\n")
    words = []
    while len(words) < 600:
        words.extend("Runs rise steadily across the listed players while averages stay flat .".split())
    (out / "oversized_insight.txt").write_text(" ".join(words[:600]) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
