"""Bundled example frameworks."""

from importlib import resources

from .af import ArgumentationFramework, parse


def fixture_path(name: str):
    return resources.files("argabs") / "data" / name


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


def jack_joe() -> ArgumentationFramework:
    """The five-argument Jack-and-Joe framework, with argument texts as labels."""
    return parse(fixture_text("jack_joe.tgf"), "tgf")


def three_cycle() -> ArgumentationFramework:
    return parse(fixture_text("3cycle.apx"), "apx")
