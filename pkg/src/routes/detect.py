import logging

from fastapi import APIRouter

from src.errors import SearchBudgetExceeded
from src.services.graphio import resolve_graph
from src.services.oracle import WitnessContext, subgraph_find, verify_witness
from src.services.witness import DichotomyResult
from src.types import Config, DetectRequest

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/detect")
def detect(body: DetectRequest):
    pattern = resolve_graph(body.pattern)
    host = resolve_graph(body.host)
    try:
        copy = subgraph_find(host, pattern, budget=Config().search_budget)
    except SearchBudgetExceeded as e:
        logger.info("detect: %s", e)
        result = DichotomyResult.failure(f"search budget of {e.budget} nodes exceeded")
    else:
        result = DichotomyResult.pattern_copy(copy) if copy is not None else DichotomyResult.failure("absent")
    verified = verify_witness(result, WitnessContext(host=host, pattern=pattern))
    return {**result.to_document(), "verified": verified}
