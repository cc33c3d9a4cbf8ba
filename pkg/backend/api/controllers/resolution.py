from fastapi import APIRouter, HTTPException, status

from api.schemas.report import ResolutionDoc, ResolutionRequest
from api.services.certificate_pipeline import family_generators, run_resolution
from api.services.lyubeznik import Monomial
from api.utils.http_errors import domain_errors_as_http

router = APIRouter(tags=["resolution"])


def _generators_from_dicts(rows: list[dict[str, int]]) -> tuple[list[Monomial], list[str]]:
    names: dict[str, int] = {}
    gens = []
    for row in rows:
        gens.append(Monomial.of({names.setdefault(var, len(names)): e for var, e in row.items()}))
    return gens, sorted(names, key=names.get)


@router.post("/resolution", response_model=ResolutionDoc)
def lyubeznik_resolution(body: ResolutionRequest) -> ResolutionDoc:
    """Lyubeznik complex of a generator list or a family, with Betti numbers when minimal."""
    if (body.generators is None) == (body.family is None):
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail="Give exactly one of 'generators' or 'family'",
        )
    with domain_errors_as_http():
        if body.family is not None:
            gens, labels = family_generators(body.family.name, body.family.args)
        else:
            gens, labels = _generators_from_dicts(body.generators)
        return run_resolution(gens, labels, order=body.order, with_matrices=body.matrices)
