#!/usr/bin/env python3
"""Writes data/synthetic_ppg.csv: 321 players with points-per-game values
for two seasons, shaped like a league table.

Ranked descending (rank 1 = highest PPG) the data contains two improving
pairs and two declining pairs with fixed rank changes:

  wl  300 -> 87   (213 places up)     rj  260 -> 26   (234 places up)
  ah  150 -> 264  (114 places down)   te  180 -> 304  (124 places down)

Final ranks follow the initial ranks plus Gaussian noise, as season-to-season
scoring does. The seed is chosen so that, after the rank transform, the
10th/11th and 30th/31st largest absolute rank changes differ on both sides
and at most 9 changes per side exceed half the rank range.
"""
import csv
import random
import sys

N = 321
NOISE = 45.0
HALF_RANGE = (N - 1) / 2
PINNED = {"wl": (300, 87), "rj": (260, 26), "ah": (150, 264), "te": (180, 304)}


def place(perm, index, rank):
    other = perm.index(rank)
    perm[index], perm[other] = perm[other], perm[index]


def generate(seed):
    rng = random.Random(seed)
    ids = [f"p{i:03d}" for i in range(1, N + 1 - len(PINNED))] + list(PINNED)
    initial = list(range(1, N + 1))
    rng.shuffle(initial)
    for name, (a, _) in PINNED.items():
        place(initial, ids.index(name), a)
    pinned_final = {ids.index(name): b for name, (_, b) in PINNED.items()}
    free_ranks = [r for r in range(1, N + 1) if r not in pinned_final.values()]
    movers = [i for i in range(N) if i not in pinned_final]
    movers.sort(key=lambda i: initial[i] + rng.gauss(0.0, NOISE))
    final = [0] * N
    for i, rank in zip(movers, free_ranks):
        final[i] = rank
    for i, rank in pinned_final.items():
        final[i] = rank
    return ids, initial, final


def tie_free(initial, final):
    deltas = [f - i for i, f in zip(initial, final)]
    for side in (lambda d: d > 0, lambda d: d < 0):
        mags = sorted((abs(d) for d in deltas if side(d)), reverse=True)
        for k in (10, 30):
            if mags[k - 1] == mags[k]:
                return False
        if mags[9] > HALF_RANGE:
            return False
    return True


def main(path):
    for seed in range(1, 10000):
        ids, initial, final = generate(seed)
        if all(initial[ids.index(n)] == a and final[ids.index(n)] == b
               for n, (a, b) in PINNED.items()) and tie_free(initial, final):
            break
    else:
        raise SystemExit("no tie-free seed found")
    with open(path, "w", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["id", "label", "initial", "final"])
        for name, a, b in zip(ids, initial, final):
            label = {"wl": "Player WL", "rj": "Player RJ", "ah": "Player AH",
                     "te": "Player TE"}.get(name, "Player " + name[1:])
            writer.writerow([name, label, f"{30 - 0.08 * (a - 1):.2f}",
                             f"{31 - 0.085 * (b - 1):.3f}"])
    print(f"seed {seed} -> {path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/synthetic_ppg.csv")
