from fastapi import APIRouter

from api.schemas.ideal import EdgeListDoc
from api.schemas.report import PdReport
from api.services.certificate_pipeline import run_pd
from api.utils.http_errors import domain_errors_as_http

router = APIRouter(tags=["pd"])


@router.post("/pd", response_model=PdReport)
def projective_dimension(body: EdgeListDoc) -> PdReport:
    """pd of R/I(T), the recursion trace and the mu - rho + 1 upper bound."""
    with domain_errors_as_http():
        return run_pd(body.to_forest(), with_bounds=True)
