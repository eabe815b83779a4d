# Copyright 2026 The lanegraph Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Least-squares and exhaustive RANSAC oracles for the frozen fit fixtures.

Writes ../data/noisy_parabola.txt and ../data/ransac_30.txt ("v u" per line)
and prints the values the C++ tests compare against.
"""

import itertools
import pathlib

import numpy as np

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def design(v):
    return np.column_stack([v * v, v, np.ones_like(v)])


LICENSE = "".join(
    itertools.takewhile(lambda l: l.startswith("#"), open(__file__).readlines()))


def write_points(path, v, u):
    with open(path, "w") as f:
        f.write(LICENSE + "\n")
        for a, b in zip(v, u):
            f.write(f"{a:.17g} {b:.17g}\n")


def noisy_parabola():
    rng = np.random.default_rng(20261014)
    v = np.arange(1, 101, dtype=float)
    truth = np.array([0.003, 0.1, 50.0])
    sigma = 0.5
    u = design(v) @ truth + rng.normal(0.0, sigma, v.size)
    u = np.array([float(f"{x:.17g}") for x in u])
    write_points(DATA / "noisy_parabola.txt", v, u)
    a = design(v)
    beta_lstsq = np.linalg.lstsq(a, u, rcond=None)[0]
    beta_pinv = np.linalg.pinv(a) @ u
    sd = sigma * np.sqrt(np.diag(np.linalg.inv(a.T @ a)))
    print("noisy truth", truth.tolist())
    print("noisy lstsq", [f"{x:.17g}" for x in beta_lstsq])
    print("noisy pinv ", [f"{x:.17g}" for x in beta_pinv])
    print("noisy sd   ", [f"{x:.6g}" for x in sd])
    print("noisy |err|/sd", (np.abs(beta_lstsq - truth) / sd).tolist())


def ransac_instance():
    rng = np.random.default_rng(7)
    v = np.arange(1, 31, dtype=float)
    u = 0.01 * v * v + 2.0
    outliers = rng.choice(30, size=6, replace=False)
    u[outliers] = rng.uniform(1.0, 240.0, size=6)
    write_points(DATA / "ransac_30.txt", v, u)
    t_r = 5.0
    best_count, best_sets = 0, []
    for i, j, k in itertools.combinations(range(30), 3):
        m = design(v[[i, j, k]])
        beta = np.linalg.solve(m, u[[i, j, k]])
        inl = (u - design(v) @ beta) ** 2 < t_r
        c = int(inl.sum())
        if c > best_count:
            best_count, best_sets = c, [tuple(np.flatnonzero(inl))]
        elif c == best_count and tuple(np.flatnonzero(inl)) not in best_sets:
            best_sets.append(tuple(np.flatnonzero(inl)))
    print("ransac outlier rows", sorted((outliers + 1).tolist()))
    print("ransac best triple consensus", best_count, "distinct best sets", len(best_sets))
    for s in best_sets:
        s = list(s)
        beta = np.linalg.lstsq(design(v[s]), u[s], rcond=None)[0]
        refit_inl = int(((u - design(v) @ beta) ** 2 < t_r).sum())
        print("  set rows", [int(x) + 1 for x in s])
        print("  refit", [f"{x:.17g}" for x in beta], "refit consensus", refit_inl)


if __name__ == "__main__":
    noisy_parabola()
    ransac_instance()
