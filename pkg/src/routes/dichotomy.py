from fastapi import APIRouter

from src.services.drivers import run_driver
from src.services.graphio import resolve_graph
from src.services.instances import Instance
from src.types import DichotomyRequest, DriverName

router = APIRouter()


@router.post("/dichotomy/{driver}")
def dichotomy(driver: DriverName, body: DichotomyRequest):
    inst = Instance(
        host=resolve_graph(body.host),
        pattern=resolve_graph(body.pattern) if body.pattern else None,
        target=resolve_graph(body.target) if body.target else None,
        n=body.n,
        k=body.k,
    )
    result, verified = run_driver(driver, inst, body.config)
    return {**result.to_document(), "driver": driver, "verified": verified}
