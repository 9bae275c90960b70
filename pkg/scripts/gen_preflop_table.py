#!/usr/bin/env python3
"""Regenerate src/nfspgp/_preflop_data.py.

Orders the 169 canonical hole classes by all-in equity versus a uniform
random opponent hand (ties as half-wins), estimated with a fixed-seed
Monte-Carlo of N_SAMPLES board+opponent completions per class.  Near-exact
ties break toward pairs, then higher ranks, then suitedness, so the output
is stable and fully reproducible.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from nfspgp import cards  # noqa: E402

SEED = 20240901
N_SAMPLES = 500_000
CHUNK = 100_000


def class_representative(name: str) -> list[cards.Card]:
    hi = cards.RANK_CHARS.index(name[0])
    lo = cards.RANK_CHARS.index(name[1])
    if len(name) == 2:
        return [cards.Card(hi, 0), cards.Card(hi, 1)]
    if name[2] == "s":
        return [cards.Card(hi, 0), cards.Card(lo, 0)]
    return [cards.Card(hi, 0), cards.Card(lo, 1)]


def all_class_names() -> list[str]:
    names = [cards.RANK_CHARS[r] * 2 for r in range(13)]
    for hi in range(12, -1, -1):
        for lo in range(hi - 1, -1, -1):
            names.append(cards.RANK_CHARS[hi] + cards.RANK_CHARS[lo] + "s")
            names.append(cards.RANK_CHARS[hi] + cards.RANK_CHARS[lo] + "o")
    return names


def mc_equity(hole: list[cards.Card], rng: np.random.Generator) -> float:
    hero = np.array([c.id for c in hole], dtype=np.int64)
    rem = np.setdiff1d(np.arange(52), hero)
    score = 0.0
    done = 0
    while done < N_SAMPLES:
        n = min(CHUNK, N_SAMPLES - done)
        u = rng.random((n, rem.shape[0]))
        idx = np.argpartition(u, 7, axis=1)[:, :7]
        draws = rem[idx]
        opp = draws[:, :2]
        board = draws[:, 2:]
        hero7 = np.concatenate([np.broadcast_to(hero, (n, 2)), board], axis=1)
        opp7 = np.concatenate([opp, board], axis=1)
        hr = cards.rank7_ids_batch(hero7)
        orr = cards.rank7_ids_batch(opp7)
        score += float(np.count_nonzero(hr < orr) + 0.5 * np.count_nonzero(hr == orr))
        done += n
    return score / N_SAMPLES


def main() -> None:
    names = all_class_names()
    rng = np.random.default_rng(SEED)
    rows = []
    t0 = time.time()
    for i, name in enumerate(names):
        eq = mc_equity(class_representative(name), rng)
        is_pair = len(name) == 2
        hi = cards.RANK_CHARS.index(name[0])
        lo = cards.RANK_CHARS.index(name[1])
        suited = len(name) == 3 and name[2] == "s"
        rows.append((-eq, 0 if is_pair else 1, -hi, -lo, 0 if suited else 1, name, eq))
        print(f"[{i+1:3d}/169] {name:3s} equity={eq:.5f}  ({time.time()-t0:.0f}s)")
    rows.sort()

    out = Path(__file__).resolve().parent.parent / "src" / "nfspgp" / "_preflop_data.py"
    with open(out, "w", encoding="ascii") as fh:
        fh.write('"""169-class preflop ranking table.\n\n')
        fh.write("Generated by scripts/gen_preflop_table.py: all-in equity vs a uniform\n")
        fh.write(f"random hand, Monte-Carlo with seed={SEED}, n={N_SAMPLES} per class.\n")
        fh.write('Do not edit by hand.\n"""\n\n')
        fh.write("PREFLOP_RANKS: tuple[tuple[str, int], ...] = (\n")
        for rank, row in enumerate(rows, start=1):
            fh.write(f'    ("{row[5]}", {rank}),  # equity {row[6]:.5f}\n')
        fh.write(")\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
