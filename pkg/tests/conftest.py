import pytest

from objections import netfile
from objections.belief import ObjectionState
from objections.logic import FALSE, TRUE, Atom, Not, Vocabulary


@pytest.fixture(scope="session")
def grass_doc():
    return netfile.load_path(netfile.bundled_path("grass.ocn"))


@pytest.fixture(scope="session")
def grass_pcn_doc():
    return netfile.load_path(netfile.bundled_path("grass.pcn"))


@pytest.fixture(scope="session")
def birdfly_doc():
    return netfile.load_path(netfile.bundled_path("birdfly.obs"))


@pytest.fixture(scope="session")
def birdfly_state():
    """The bird/fly state built in code, independently of the bundled file."""
    domain = Vocabulary.of(["bird", "fly"], tag="L")
    normal = Atom("normal", "O")
    by_signs = {
        (True, True): Not(normal),
        (True, False): normal,
        (False, True): TRUE,
        (False, False): FALSE,
    }
    entries = {world: by_signs[world.bits] for world in domain.worlds()}
    return ObjectionState.from_world_table(entries, Vocabulary.of(["normal"], tag="O"))
