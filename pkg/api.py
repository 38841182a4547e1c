"""
FastAPI REST API for the dqmotion toolkit
Spectrum, filter and round-trip pipelines over JSON motion tracks
"""

import json
import logging
import os
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Tuple

from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from exceptions import DegenerateSampleError, InvalidArgumentError
from orchestrator import MotionPipelineOrchestrator
from signal_io import Encoding, MotionTrack, TrackFormat, render_spectrum, render_track, track_from_records
from spectral import TransformAxis, TransformSide

load_dotenv()

# Configure logging
logging.basicConfig(
    level=os.getenv('LOG_LEVEL', 'INFO').upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="dqmotion API",
    description="Procesamiento espectral de movimientos rígidos con cuaterniones duales",
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc"
)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

orchestrator = MotionPipelineOrchestrator()


# Pydantic models
class TrackRequest(BaseModel):
    track: List[Dict[str, float]] = Field(..., description="Filas del track (t,qw,qx,qy,qz,tx,ty,tz o t,ax,ay,az)",
                                          min_length=1)
    encoding: Encoding = Field(Encoding.RIGID, description="Codificación: rigid o pure")
    side: TransformSide = Field(TransformSide.RIGHT, description="Lado de la transformada: left o right")
    axis: Tuple[float, float, float] = Field((1.0, 1.0, 1.0), description="Eje de la transformada")
    fast: bool = Field(False, description="Usar la ruta FFT")
    hemisphere_align: bool = Field(True, description="Alinear hemisferios de rotaciones consecutivas")
    renormalize_input: bool = Field(False, description="Renormalizar rotaciones no unitarias de entrada")


class SpectrumRequest(TrackRequest):
    top: int = Field(3, ge=0, description="Número de distancias de frecuencia dominantes")


class FilterRequest(TrackRequest):
    low_pass: Optional[str] = Field(None, description="Corte pasa-bajos en bins o con sufijo hz")
    high_pass: Optional[str] = Field(None, description="Corte pasa-altos en bins o con sufijo hz")
    band: Optional[str] = Field(None, description="Banda 'lo:hi'")
    renormalize: bool = Field(False, description="Proyectar la salida a movimientos rígidos válidos")


def _load(request: TrackRequest) -> Tuple[MotionTrack, TransformAxis]:
    return track_from_records(request.track, request.renormalize_input), TransformAxis.from_vector(request.axis)


def _run(name: str, action: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
    """Run a pipeline and map domain errors to HTTP statuses"""
    try:
        return action()
    except DegenerateSampleError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except InvalidArgumentError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error in {name}: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Error interno del servidor: {str(e)}")


# API Endpoints

@app.post("/spectrum")
async def compute_spectrum(request: SpectrumRequest):
    """
    Calcular el espectro DQFT de un track

    - **track**: filas del track
    - **side**, **axis**, **encoding**: parámetros de la transformada
    - **top**: distancias de frecuencia dominantes a reportar
    """
    def action() -> Dict[str, Any]:
        track, axis = _load(request)
        result = orchestrator.spectrum(track, request.encoding, request.side, axis,
                                       request.hemisphere_align, request.top, fast=request.fast)
        return {
            'rows': json.loads(render_spectrum(result['spectrum'], TrackFormat.JSON)),
            'dominant_bins': [{'distance': d, 'energy': e} for d, e in result['dominant_bins']],
            'energy': result['energy'],
        }
    logger.info(f"Processing spectrum request: {len(request.track)} samples")
    return _run('spectrum', action)


@app.post("/filter")
async def filter_track(request: FilterRequest):
    """
    Filtrar un track en el dominio de la frecuencia

    Exactamente uno de **low_pass**, **high_pass** o **band**.
    """
    def action() -> Dict[str, Any]:
        track, axis = _load(request)
        result = orchestrator.filter(track, request.low_pass, request.high_pass, request.band,
                                     request.encoding, request.side, axis, request.renormalize,
                                     request.hemisphere_align, fast=request.fast)
        return {
            'track': json.loads(render_track(result['track'], TrackFormat.JSON)),
            'report': result['report'].to_dict(),
        }
    logger.info(f"Processing filter request: {len(request.track)} samples")
    return _run('filter', action)


@app.post("/roundtrip")
async def roundtrip(request: TrackRequest):
    """Error máximo de reconstrucción de transformada directa + inversa"""
    def action() -> Dict[str, Any]:
        track, axis = _load(request)
        result = orchestrator.roundtrip(track, request.encoding, request.side, axis,
                                        request.hemisphere_align, fast=request.fast)
        return {k: result[k] for k in ('max_error', 'bound', 'within_bound')}
    return _run('roundtrip', action)


@app.get("/health")
async def health():
    """Estado del sistema y estadísticas del cache de kernels"""
    report = orchestrator.health_check()
    report['stats'] = orchestrator.get_stats()
    return report


# Error handlers
@app.exception_handler(RequestValidationError)
async def validation_error_handler(request: Request, exc: RequestValidationError):
    return JSONResponse(
        status_code=400,
        content={
            "error": "Solicitud inválida",
            "detail": json.loads(json.dumps(exc.errors(), default=str)),
            "timestamp": datetime.now().isoformat()
        }
    )


@app.exception_handler(404)
async def not_found_handler(request, exc):
    return JSONResponse(
        status_code=404,
        content={
            "error": "Endpoint no encontrado",
            "message": "El endpoint solicitado no existe",
            "timestamp": datetime.now().isoformat()
        }
    )


# Startup event
@app.on_event("startup")
async def startup_event():
    logger.info("🚀 dqmotion API started - POST /spectrum, /filter, /roundtrip; GET /health")


# Shutdown event
@app.on_event("shutdown")
async def shutdown_event():
    logger.info("🛑 dqmotion API shutting down")


if __name__ == "__main__":
    import uvicorn

    port = int(os.getenv('PORT', 8000))
    host = os.getenv('HOST', '0.0.0.0')

    uvicorn.run(
        "api:app",
        host=host,
        port=port,
        reload=os.getenv('ENVIRONMENT', 'production') == 'development',
        log_level=os.getenv('LOG_LEVEL', 'info').lower()
    )
