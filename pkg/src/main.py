from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.config import ROOT_PATH, configure_logging
from src.exceptions import DetailedError
from .climatology.router import router as climatology_router
from .harness.router import router as harness_router


@asynccontextmanager
async def logging_lifespan(app: FastAPI):
    configure_logging()
    yield


app = FastAPI(root_path=ROOT_PATH, lifespan=logging_lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(DetailedError)
async def detailed_error_handler(request: Request, exc: DetailedError):
    return JSONResponse(status_code=exc.STATUS_CODE, content={"detail": exc.detail})


app.include_router(climatology_router)
app.include_router(harness_router)
