import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv
from starlette.middleware.cors import CORSMiddleware

# reads backend/.env before api.config is imported
sys.path.insert(0, str(Path(__file__).parent))
env_path = Path(__file__).parent / ".env"
if env_path.exists():
    load_dotenv(dotenv_path=env_path, override=False)

from fastapi import FastAPI

from api import config
from api.controllers.ara import router as ara_router
from api.controllers.families import router as families_router
from api.controllers.pd import router as pd_router
from api.controllers.resolution import router as resolution_router

logging.basicConfig(
    level=config.ARA_LOG_LEVEL,
    format="%(levelname)-8s %(name)s - %(message)s",
    handlers=[logging.StreamHandler(sys.stdout)],
)

app = FastAPI(
    title="Edge Ideal Certificate API",
    description="Projective dimension, arithmetical-rank certificates and Lyubeznik resolutions for edge ideals of forests",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(pd_router, prefix="/api")
app.include_router(ara_router, prefix="/api")
app.include_router(resolution_router, prefix="/api")
app.include_router(families_router, prefix="/api")


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


if __name__ == "__main__":
    os.system(f"fastapi dev {str(Path(__file__).parent)}/application.py --host 0.0.0.0 --port 8000")
