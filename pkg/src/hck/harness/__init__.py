"""Fixtures, input loading, scenario runners and the command line."""
from .fixtures import listing, load_cover, load_group, load_hypercover, load_map, load_space
from .groups import FiniteGroup, GroupError, bar_construction, cyclic_group, symmetric_group
from .io import InputError, read_json
from .randomgen import random_bounded_hypercover, random_complete_cover, random_cover
from .scenarios import SCENARIO_IDS, Report, Scenario, extra_degeneracy_report, run_scenario

__all__ = ["listing", "load_cover", "load_group", "load_hypercover", "load_map", "load_space",
           "FiniteGroup", "GroupError", "bar_construction", "cyclic_group", "symmetric_group",
           "InputError", "read_json", "random_bounded_hypercover", "random_complete_cover",
           "random_cover", "SCENARIO_IDS", "Report", "Scenario", "extra_degeneracy_report",
           "run_scenario", "load_fixture"]


def load_fixture(name: str):
    """Space fixture by name (``"S1min"``), or ``"space:cover"`` for a cover."""
    if ":" in name:
        space, cover = name.split(":", 1)
        return load_cover(space, cover)
    return load_space(name)
