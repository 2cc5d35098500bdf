from fractions import Fraction
from functools import lru_cache

import pytest

from flextri.enumeration import EnumerationTask, enumerate_triangulations
from flextri.geometry import RealizationParams, construction_coords
from flextri.surfaces import build_graph


@lru_cache(maxsize=None)
def catalog_for(graph_name: str):
    mode = "with_boundary" if graph_name == "k5" else "closed"
    target = {
        "k2222": "torus",
        "k6": "projective plane",
        "k5": "Möbius band",
    }[graph_name]
    return enumerate_triangulations(
        EnumerationTask(build_graph(graph_name), mode, target)
    )


@pytest.fixture(scope="session")
def torus_catalog():
    return catalog_for("k2222")


@pytest.fixture(scope="session")
def rp2_catalog():
    return catalog_for("k6")


@pytest.fixture(scope="session")
def moebius_catalog():
    return catalog_for("k5")


@pytest.fixture(scope="session")
def schlegel16_points():
    return construction_coords("schlegel16cell", RealizationParams(Fraction(4)))


@pytest.fixture(scope="session")
def suspension_points():
    return construction_coords("suspension", RealizationParams(Fraction(14, 5)))


@pytest.fixture(scope="session")
def rp2_points():
    return construction_coords("rp2_simplex")


@pytest.fixture(scope="session")
def moebius_points():
    return construction_coords("moebius")
