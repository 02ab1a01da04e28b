from fastapi import APIRouter

from src.services.stress import run_stress
from src.types import StressReport, StressRequest

router = APIRouter()


@router.post("/stress", response_model=StressReport)
def stress(body: StressRequest):
    return run_stress(body.driver, body.trials, body.seed, spec=body.spec, cfg=body.config)
