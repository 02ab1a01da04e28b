from fastapi import FastAPI

from src.middleware.errors import install_error_handlers
from src.routes import detect, dichotomy, health, ramsey, stress

app = FastAPI(title="ramsey-witness", version="0.1.0")
install_error_handlers(app)

app.include_router(health.router)
app.include_router(detect.router)
app.include_router(dichotomy.router)
app.include_router(ramsey.router)
app.include_router(stress.router)
