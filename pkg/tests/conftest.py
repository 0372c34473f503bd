"""Shared fixtures.  The expensive objects (hosts, Haar states, irreducible
tables) are computed once per session and reused across test modules."""

from __future__ import annotations

import pytest

from qg import catalog
from qg.corep import irr_table
from qg.measures import haar_solve


@pytest.fixture(scope="session")
def groups():
    return {name: catalog.group(name) for name in catalog.group_names()}


@pytest.fixture(scope="session")
def hosts():
    """Every catalog Hopf algebra, keyed like the payload catalog."""
    return {name: h for name, h in catalog.hopf_entries()}


@pytest.fixture(scope="session")
def haar_states(hosts):
    return {name: haar_solve(h).state for name, h in hosts.items()}


@pytest.fixture(scope="session")
def function_irr_tables(groups, hosts):
    """Irreducible corepresentations of C^G for every catalog group, on the
    shared host objects so Haar states from `haar_states` attach to them."""
    return {name: irr_table(hosts[f"c_{name.lower()}"]) for name in groups}


@pytest.fixture(scope="session")
def s3_host(hosts):
    return hosts["c_s3"]


@pytest.fixture(scope="session")
def s3_haar(haar_states):
    return haar_states["c_s3"]


@pytest.fixture(scope="session")
def z6_host(hosts):
    return hosts["c_z6"]
