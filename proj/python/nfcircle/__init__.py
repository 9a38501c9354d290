"""Python interface to the nfcircle toolkit.

The extension module speaks JSON strings; this wrapper turns them into
dictionaries so results are plain Python data.
"""

import json

from ._core import (
    BudgetError,
    InfeasibleError,
    Instance as _CoreInstance,
    SchemaError,
    builtin_fixture_names,
    tool_version,
)

__all__ = [
    "BudgetError",
    "InfeasibleError",
    "Instance",
    "SchemaError",
    "builtin_fixture_names",
    "tool_version",
]


class Instance:
    """One equation instance a N(x) + b N(y) = z^n with its box data."""

    def __init__(self, core):
        self._core = core

    @classmethod
    def from_fixture(cls, name):
        return cls(_CoreInstance.from_fixture(name))

    @classmethod
    def from_dict(cls, doc):
        return cls(_CoreInstance.from_json(json.dumps(doc)))

    def to_dict(self):
        return json.loads(self._core.to_json())

    @property
    def label(self):
        return self._core.label

    @property
    def m(self):
        return self._core.m

    @property
    def n(self):
        return self._core.n

    @property
    def slots(self):
        return self._core.slots

    @property
    def rho(self):
        return self._core.rho

    def count(self, P, jobs=1, budget=2_000_000_000):
        return int(self._core.count(P, jobs, budget))

    def naive_count(self, P, budget=100_000_000):
        return int(self._core.naive_count(P, budget))

    def orthogonality_count(self, P):
        return int(self._core.orthogonality_count(P))

    def complete_sum(self, gamma):
        return self._core.complete_sum([str(g) for g in gamma])

    def local_density(self, p, tol=1e-3):
        return json.loads(self._core.local_density(p, tol))

    def singular_series(self, prime_cutoff=50, gamma_cutoff=64):
        return json.loads(self._core.singular_series(prime_cutoff, gamma_cutoff))

    def singular_integral(self, method="slab", samples=2_000_000, seed=1, jobs=1):
        return json.loads(self._core.singular_integral(method, samples, seed, jobs))

    def predict(self, P, prime_cutoff=50, gamma_cutoff=64, samples=2_000_000, seed=1, jobs=1):
        return json.loads(self._core.predict(P, prime_cutoff, gamma_cutoff, samples, seed, jobs))

    def hensel(self, p):
        return json.loads(self._core.hensel(p))

    def hensel_replay(self, cert):
        return self._core.hensel_replay(json.dumps(cert))

    def real_places(self):
        return json.loads(self._core.real_places())

    def wapprox(self, schedule, jobs=1):
        return json.loads(self._core.wapprox(list(schedule), jobs))

    def wapprox_replay(self, cert):
        return self._core.wapprox_replay(json.dumps(cert))

    def minor_arcs(self, P_list, theta=0.4, samples=100, seed=42):
        return json.loads(self._core.minor_arcs(list(P_list), theta, samples, seed))
