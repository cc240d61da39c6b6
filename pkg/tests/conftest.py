from pathlib import Path

import pytest

from racgkit.graphs import DefiningGraph, load_graph

DATA = Path(__file__).parent / "data"


def read_graph(name: str) -> DefiningGraph:
    return load_graph((DATA / f"{name}.graph").read_text())


def path_graph(*labels: str) -> DefiningGraph:
    return DefiningGraph.from_edges(labels, zip(labels, labels[1:]))


def cycle_graph(*labels: str) -> DefiningGraph:
    return DefiningGraph.from_edges(labels, zip(labels, labels[1:] + labels[:1]))


# graphs with at most five vertices used for exhaustive word-problem checks
SMALL_GRAPHS = {
    "edge": DefiningGraph.from_edges("ad", ["ad"]),
    "tdb": DefiningGraph.from_edges("adb", ["ad"]),
    "discrete3": DefiningGraph.from_edges("abc"),
    "path4": path_graph("a", "b", "c", "e"),
    "square": cycle_graph("a", "b", "c", "e"),
    "pentagon": cycle_graph("a", "b", "c", "e", "f"),
    "paw": DefiningGraph.from_edges("abce", ["ab", "bc", "ac", "ce"]),
    "k4": DefiningGraph.from_edges("abce", ["ab", "ac", "ae", "bc", "be", "ce"]),
}


@pytest.fixture
def edge():
    return read_graph("edge")


@pytest.fixture
def tdb():
    return read_graph("tdb")


@pytest.fixture
def fig1():
    return read_graph("fig1")


@pytest.fixture
def single():
    return DefiningGraph.from_edges(["a"])


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
