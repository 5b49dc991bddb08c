"""Independent reference computations used only by the tests.

Nothing here imports the code paths it is used to check.
"""

import math

import numpy as np


def adjacency(n, edges):
    a = [[0] * n for _ in range(n)]
    for u, v in edges:
        if u != v:
            a[u][v] = a[v][u] = 1
    return a


def brute_index(n, edges, family, alpha):
    """Double loop over the full adjacency matrix, i < j, plain Python floats."""
    a = adjacency(n, edges)
    d = [sum(row) for row in a]
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j]:
                if family == "randic":
                    total += float(d[i]) ** alpha * float(d[j]) ** alpha
                else:
                    total += float(d[i] + d[j]) ** alpha
    return total


def midpoint_integral(kappa, alpha, m=4096):
    h = 1.0 / m
    x = (np.arange(m) + 0.5) * h
    ex = np.exp(-kappa * x)
    total = 0.0
    # row by row keeps memory at O(m)
    for i in range(m):
        total += float(np.sum((ex[i] + ex) ** alpha * ex[i] * ex))
    return total * h * h


def pair_loop_aggregates(matrix):
    n = len(matrix)
    return [math.fsum(matrix[i][j] for j in range(n) if j != i) for i in range(n)]
