from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from pixelnav import __version__
from pixelnav.core.exceptions import AppError, ConfigError
from pixelnav.episode.router import router as episodes_router
from pixelnav.topograph.router import router as graphs_router

app = FastAPI(
    title="PixelNav",
    version=__version__,
    description="Topological-graph navigation with pixel-space MPPI control in a 2D simulator.",
)


@app.exception_handler(AppError)
async def app_error_handler(request: Request, exc: AppError) -> JSONResponse:
    return JSONResponse(
        status_code=422 if isinstance(exc, ConfigError) else 409,
        content={"detail": exc.message},
    )


app.include_router(graphs_router)
app.include_router(episodes_router)


@app.get("/health")
async def health() -> dict[str, str]:
    return {"status": "ok", "version": __version__}
