import numpy as np

from cglmplab import MeasurementSettings, UnitaryMatrix


def random_density(rng, d):
    """Full-rank random density matrix on C^d (x) C^d (Wishart normalized)."""
    g = rng.normal(size=(d * d, d * d)) + 1j * rng.normal(size=(d * d, d * d))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return m


def random_pure(rng, d):
    v = rng.normal(size=d * d) + 1j * rng.normal(size=d * d)
    return v / np.linalg.norm(v)


def random_unitary(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_settings(rng, d):
    return MeasurementSettings(
        d,
        (UnitaryMatrix(d, random_unitary(rng, d)), UnitaryMatrix(d, random_unitary(rng, d))),
        (UnitaryMatrix(d, random_unitary(rng, d)), UnitaryMatrix(d, random_unitary(rng, d))),
    )
