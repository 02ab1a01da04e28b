from fastapi import APIRouter

from src.services.graphio import format_graph6, resolve_graph
from src.services.oracle import ramsey_exact
from src.types import RamseyReport, RamseyRequest

router = APIRouter()


@router.post("/ramsey", response_model=RamseyReport)
def ramsey(body: RamseyRequest):
    outcome = ramsey_exact(resolve_graph(body.pattern), resolve_graph(body.target), body.nmax)
    return RamseyReport(
        pattern=body.pattern,
        target=body.target,
        nmax=body.nmax,
        value=outcome.value,
        exceeded=outcome.exceeded,
        witness=format_graph6(outcome.witness) if outcome.witness is not None else None,
    )
