#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The SCIP Authors
"""Generates data/sample_corpus.jsonl: ~1,000 small synthetic Python files.

The corpus mixes ordinary snippets with planted exact duplicates, planted
near-duplicates, bracket-heavy files and a handful of bracket-free files.
Output is fully determined by --seed.
"""

import argparse
import json
import random

NOUNS = ["count", "total", "items", "values", "data", "result", "index", "buffer", "scores", "names",
         "rows", "matrix", "queue", "stack", "cache", "prices", "weights", "tokens", "lines", "nodes"]
VERBS = ["compute", "load", "parse", "update", "merge", "filter", "sort", "scale", "render", "collect",
         "flatten", "reduce", "encode", "decode", "validate", "normalize"]
OPS = ["==", "!=", "<", ">", "<=", ">="]


def ident(rng):
    return rng.choice(NOUNS) + rng.choice(["", "_a", "_b", "_tmp", "2", "_list"])


def func_loop(rng):
    a, b, acc = ident(rng), ident(rng), rng.choice(["acc", "out", "res"])
    n = rng.randint(2, 50)
    op = rng.choice(OPS)
    return (f"def {rng.choice(VERBS)}_{a}({a}, {b}):\n"
            f"    {acc} = 0\n"
            f"    for i in range({n}):\n"
            f"        if {a}[i] {op} {b}:\n"
            f"            {acc} += {a}[i]\n"
            f"    return {acc}\n")


def func_while(rng):
    x = ident(rng)
    lim = rng.randint(3, 99)
    return (f"{x} = {rng.randint(0, 9)}\n"
            f"while {x} < {lim}:\n"
            f"    {x} += {rng.randint(1, 5)}\n"
            f"print({x})\n")


def dict_heavy(rng):
    keys = rng.sample(NOUNS, 4)
    body = ", ".join(f"'{k}': [{rng.randint(0, 9)}, {{'v': ({rng.randint(0, 9)}, {rng.randint(0, 9)})}}]" for k in keys)
    v = ident(rng)
    return (f"{v} = {{{body}}}\n"
            f"for key in sorted({v}.keys()):\n"
            f"    print(key, {v}[key][0], len({v}[key]))\n")


def class_def(rng):
    cls = rng.choice(VERBS).capitalize() + rng.choice(["er", "Manager", "Store", "Queue"])
    f = ident(rng)
    return (f"class {cls}:\n"
            f"    def __init__(self, {f}):\n"
            f"        self.{f} = list({f})\n"
            f"\n"
            f"    def get(self, i):\n"
            f"        if i >= len(self.{f}):\n"
            f"            return None\n"
            f"        return self.{f}[i]\n")


def matrix(rng):
    m = ident(rng)
    n = rng.randint(2, 6)
    return (f"{m} = [[0] * {n} for _ in range({n})]\n"
            f"for i in range({n}):\n"
            f"    for j in range({n}):\n"
            f"        {m}[i][j] = i * j + {rng.randint(0, 9)}\n"
            f"trace = sum({m}[i][i] for i in range({n}))\n")


def string_literals(rng):
    s = ident(rng)
    return (f"{s} = \"a == b and x[0] < y\"  # not code: {rng.choice(OPS)}\n"
            f"msg = '{rng.choice(NOUNS)} > {rng.randint(0, 9)}'\n"
            f"if len({s}) > {rng.randint(1, 20)}:\n"
            f"    print(msg, {s}[{rng.randint(0, 3)}])\n")


def bracket_free(rng):
    a, b = ident(rng), ident(rng)
    return (f"{a} = {rng.randint(0, 99)}\n"
            f"{b} = {a} * {rng.randint(2, 9)} + 1\n"
            f"if {b} {rng.choice(OPS)} {a}:\n"
            f"    {a} = {b} - {a}\n"
            f"else:\n"
            f"    pass\n")


def bracket_heavy(rng):
    depth = rng.randint(3, 6)
    expr = "x"
    for _ in range(depth):
        kind = rng.choice(["()", "[]", "{}"])
        if kind == "()":
            expr = f"f({expr}, {rng.randint(0, 9)})"
        elif kind == "[]":
            expr = f"[{expr}, g({rng.randint(0, 9)})]"
        else:
            expr = f"{{'k': {expr}}}"
    return (f"def f(a, b):\n    return (a, (b,))\n\n"
            f"def g(v):\n    return [v, (v + 1)]\n\n"
            f"x = {rng.randint(0, 9)}\n"
            f"y = {expr}\n"
            f"print(y)\n")


TEMPLATES = [func_loop, func_while, dict_heavy, class_def, matrix, string_literals]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20231)
    ap.add_argument("--out", default="data/sample_corpus.jsonl")
    args = ap.parse_args()
    rng = random.Random(args.seed)

    docs = []
    for i in range(800):
        body = rng.choice(TEMPLATES)(rng)
        docs.append(body)
    for i in range(80):
        docs.append(bracket_heavy(rng))
    for i in range(40):
        docs.append(bracket_free(rng))
    # Exact duplicates: 10 sources, each copied 3 extra times.
    for src in rng.sample(range(800), 10):
        docs.extend([docs[src]] * 3)
    # Near duplicates: one trailing comment added.
    for src in rng.sample(range(800), 50):
        docs.append(docs[src] + f"# rev {rng.randint(0, 999)}\n")

    order = list(range(len(docs)))
    rng.shuffle(order)
    with open(args.out, "w", encoding="utf-8") as fh:
        for n, i in enumerate(order):
            rec = {"id": f"doc{n:05d}", "path": f"src/mod_{n:05d}.py", "lang": "python", "content": docs[i]}
            fh.write(json.dumps(rec, ensure_ascii=False, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()
