from datetime import datetime, timezone

from fastapi import APIRouter, Request

from src.services.drivers import DRIVERS

router = APIRouter()


@router.get("/health")
async def health(request: Request):
    return {
        "status": "ok",
        "version": request.app.version,
        "drivers": sorted(DRIVERS),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
