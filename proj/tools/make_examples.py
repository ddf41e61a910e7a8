#!/usr/bin/env python3
"""Generate sample JSON inputs for the flagforge CLI.

Writes Koszul complexes on pure variable powers plus matching complete
intersection descriptions into the output directory. Every file is a
valid input for the check, fold, deform, enumerate, homology, dim-bounds
and ext-dims subcommands.
"""

import argparse
import itertools
import json
import pathlib


def var_names(n):
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]


def power_str(var, exp):
    return var if exp == 1 else f"{var}^{exp}"


def koszul(degrees, field="q"):
    """Koszul complex on (v_1^{d_1}, ..., v_n^{d_n}) as a JSON dict."""
    n = len(degrees)
    names = var_names(n)
    levels = [list(itertools.combinations(range(n), k)) for k in range(n + 1)]
    twists = [[-sum(degrees[i] for i in subset) for subset in level]
              for level in levels]
    maps = []
    for k in range(1, n + 1):
        rows = []
        for target in levels[k - 1]:
            row = []
            for source in levels[k]:
                entry = "0"
                for pos, i in enumerate(source):
                    rest = source[:pos] + source[pos + 1:]
                    if rest == target:
                        sign = "-" if pos % 2 else ""
                        entry = sign + power_str(names[i], degrees[i])
                row.append(entry)
            rows.append(row)
        maps.append(rows)
    return {"ring": {"field": field, "vars": names}, "twists": twists, "maps": maps}


def ci(degrees, field="q"):
    names = var_names(len(degrees))
    gens = [power_str(v, d) for v, d in zip(names, degrees)]
    return {"ring": {"field": field, "vars": names}, "gens": gens}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="inputs",
                        help="directory for the generated files")
    args = parser.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    files = {
        "koszul2.json": koszul([1, 1]),
        "koszul2_f2.json": koszul([1, 1], field=2),
        "koszul3.json": koszul([1, 1, 1]),
        "koszul4.json": koszul([1, 1, 1, 1]),
        "powers_223.json": koszul([2, 2, 3]),
        "ci_squares2.json": ci([2, 2]),
        "ci_223.json": ci([2, 2, 3]),
        "ci_25791.json": {"n": 5, "degrees": [2, 2, 5, 7, 9]},
    }
    for name, payload in files.items():
        path = out / name
        path.write_text(json.dumps(payload, indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main()
