from fastapi import APIRouter, HTTPException, Query, status

from api.enums import FamilyName
from api.schemas.report import FamilyReport
from api.services.certificate_pipeline import run_family
from api.utils.http_errors import domain_errors_as_http

router = APIRouter(prefix="/families", tags=["families"])


@router.get("/{name}", response_model=FamilyReport)
def family(
    name: FamilyName,
    r: int = Query(..., description="leaves of a star, vertices of a line, or leaves on a for a double star"),
    s: int | None = Query(None, description="leaves on b (double star only)"),
) -> FamilyReport:
    if (name is FamilyName.DOUBLE_STAR) != (s is not None):
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail="Parameter 's' is required for double-star and not accepted otherwise",
        )
    args = [r] if s is None else [r, s]
    with domain_errors_as_http():
        return run_family(name, args)
