import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from src.errors import GraphFormatError, InvariantViolation, PreconditionError

logger = logging.getLogger(__name__)


async def _bad_input(_request: Request, exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


async def _broken_invariant(request: Request, exc: Exception) -> JSONResponse:
    logger.error("invariant violated on %s: %s", request.url.path, exc)
    return JSONResponse(status_code=500, content={"detail": f"internal invariant violated: {exc}"})


def install_error_handlers(app: FastAPI) -> None:
    """Bad graphs and rejected lemma inputs become 400s; broken invariants become 500s."""
    app.add_exception_handler(GraphFormatError, _bad_input)
    app.add_exception_handler(PreconditionError, _bad_input)
    app.add_exception_handler(InvariantViolation, _broken_invariant)
