import numpy as np


def random_matrix(rng, d, scale=1.0):
    return scale * (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))


def random_centered(rng, d):
    A = random_matrix(rng, d)
    return A - np.trace(A) / d * np.eye(d)
