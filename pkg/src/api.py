"""
FastAPI web interface: graph generation and single-pair path selection
"""

import logging
from typing import List, Optional

import uvicorn
from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .graph import GraphError, PathLimitExceeded, SocialGraph, dump_graph, extract_subnetwork, generate_graph
from .models import (
    DEFAULT_CONSTRAINTS,
    DEFAULT_WEIGHTS,
    GeneratorSpec,
    Participant,
    QoTConstraints,
    QoTWeights,
    SolveOutcome,
    SolverConfig,
    TrustEdge,
)
from .solvers import run_solver

load_dotenv()

logger = logging.getLogger(__name__)

API_VERSION = "1.0.0"

app = FastAPI(
    title="OSTP Annealer API",
    description="Optimal social trust path selection under QoT constraints",
    version=API_VERSION,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Request / response models
class GraphPayload(BaseModel):
    participants: List[Participant]
    edges: List[TrustEdge]


class GenerateResponse(GraphPayload):
    document: str


class SolveRequest(BaseModel):
    graph: GraphPayload
    source: str
    target: str
    solver: str = "qa"
    weights: QoTWeights = DEFAULT_WEIGHTS
    constraints: QoTConstraints = DEFAULT_CONSTRAINTS
    max_hops: int = Field(default=6, ge=1)
    seed: int = Field(default=0, ge=0)
    config: SolverConfig = Field(default_factory=SolverConfig)


class SolveResponse(BaseModel):
    outcome: SolveOutcome
    subnetwork_nodes: int
    subnetwork_pairs: int
    path: Optional[List[str]] = None


# API Endpoints
@app.get("/")
async def root():
    return {"message": "OSTP Annealer API is running", "version": API_VERSION}


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy"}


@app.post("/api/v1/graphs/generate", response_model=GenerateResponse)
def generate(spec: GeneratorSpec) -> GenerateResponse:
    """Generate a seeded random trust graph; also returned in the graph file format"""
    graph = generate_graph(spec)
    logger.info("Generated graph with %d participants (seed %d)", graph.number_of_nodes(), spec.seed)
    return GenerateResponse(
        participants=graph.participants(),
        edges=graph.edges(),
        document=dump_graph(graph),
    )


@app.post("/api/v1/solve", response_model=SolveResponse)
def solve(request: SolveRequest) -> SolveResponse:
    """
    Extract the hop-bounded subnetwork between source and target and run one solver

    - **solver**: one of qa, sa, mfpb, hmcop, oracle
    """
    try:
        graph = SocialGraph.from_records(request.graph.participants, request.graph.edges)
        sub = extract_subnetwork(
            graph, request.source, request.target, request.max_hops, request.config.path_limit
        )
        outcome = run_solver(
            request.solver, sub, request.weights, request.constraints, request.config, request.seed
        )
    except (GraphError, PathLimitExceeded, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Solve failed: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail=f"Solve failed: {str(e)}")

    logger.info(
        "%s solved %s->%s: %s", request.solver, request.source, request.target, outcome.result.status.value
    )
    return SolveResponse(
        outcome=outcome,
        subnetwork_nodes=sub.number_of_nodes(),
        subnetwork_pairs=sub.graph.number_of_edges(),
        path=outcome.result.path,
    )


if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
