"""Bundled instances."""

from importlib import resources

from .model import Instance, parse_instance


def office_path():
    return resources.files("prefswaps") / "data" / "office.json"


def office_instance() -> Instance:
    """Office-rental instance: four criteria, learning set e1 >= e2, e3 >= e4, e4 >= e5.

    Also defines the compared offices ``x`` and ``y`` and the reference-grid
    points ``ABCd`` and ``abcD``.
    """
    return parse_instance(office_path().read_text(encoding="utf-8"))
