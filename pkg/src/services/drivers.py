"""Registry binding driver names to dichotomy functions and their witness contexts."""

import logging
from dataclasses import dataclass
from typing import Callable

from src.errors import PreconditionError
from src.services.biclique import best_certificate, embed_vs_biclique, ev_vs_biclique
from src.services.instances import Instance
from src.services.k4star import k4star_vs_biclique, k4star_vs_bipartite, k4star_vs_clique
from src.services.oracle import WitnessContext, verify_witness
from src.services.patterns import K4STAR
from src.services.subdivision import subdivision_vs_graph
from src.services.treewidth import embed_via_treewidth, theorem12_driver
from src.services.witness import DichotomyResult
from src.types import Config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Driver:
    name: str
    needs: tuple[str, ...]
    run: Callable[[Instance, Config], DichotomyResult]
    fixed_pattern: bool = False


def _biclique(inst: Instance, cfg: Config) -> DichotomyResult:
    return embed_vs_biclique(inst.pattern, best_certificate(inst.pattern), inst.host, inst.n)


DRIVERS: dict[str, Driver] = {
    d.name: d
    for d in (
        Driver("k4star", ("target",), lambda i, c: k4star_vs_bipartite(i.host, i.target, c), fixed_pattern=True),
        Driver("k4star-clique", ("n",), lambda i, c: k4star_vs_clique(i.host, i.n, c), fixed_pattern=True),
        Driver("k4star-biclique", ("n",), lambda i, c: k4star_vs_biclique(i.host, i.n, c), fixed_pattern=True),
        Driver("subdivision", ("pattern", "target"), lambda i, c: subdivision_vs_graph(i.host, i.pattern, i.target, c)),
        Driver("tw", ("pattern", "n"), lambda i, c: embed_via_treewidth(i.pattern, i.host, i.n, c)),
        Driver("theorem12", ("pattern", "n"), lambda i, c: theorem12_driver(i.pattern, i.host, i.n, c)),
        Driver("biclique", ("pattern", "n"), _biclique),
        Driver("ev-biclique", ("pattern", "n", "k"), lambda i, c: ev_vs_biclique(i.pattern, i.host, i.n, i.k, c)),
    )
}


def get_driver(name: str) -> Driver:
    driver = DRIVERS.get(name)
    if driver is None:
        raise PreconditionError(f"unknown driver {name!r}; choose from {', '.join(DRIVERS)}")
    return driver


def prepare(name: str, inst: Instance) -> Instance:
    """Fill in the fixed K4* pattern and check the fields the driver needs."""
    driver = get_driver(name)
    if driver.fixed_pattern:
        inst = Instance(inst.host, K4STAR, inst.target, inst.n, inst.k)
    missing = [field for field in driver.needs if getattr(inst, field) is None]
    if missing:
        raise PreconditionError(f"driver {name} needs {', '.join(missing)}")
    return inst


def context_for(inst: Instance) -> WitnessContext:
    return WitnessContext(host=inst.host, pattern=inst.pattern, target=inst.target, n=inst.n)


def run_driver(name: str, inst: Instance, cfg: Config) -> tuple[DichotomyResult, bool]:
    """Run a driver and verify its witness; returns ``(result, verified)``."""
    inst = prepare(name, inst)
    result = get_driver(name).run(inst, cfg)
    verified = verify_witness(result, context_for(inst))
    logger.debug("%s: %s (verified=%s)", name, result.tag, verified)
    return result, verified
