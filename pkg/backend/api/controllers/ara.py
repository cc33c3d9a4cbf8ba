"""
Certificate endpoints:
1. /ara/build  builds a tree-like system for a stretched forest or a named family
2. /ara/verify checks a posted system (tree-like, Schmitt-Vogel, finite-field oracle)
3. /sv/check   checks a posted partition
"""
import logging

from fastapi import APIRouter, HTTPException, status

from api.schemas.report import AraBuildRequest, CertificateReport, SvCheckRequest, SvDoc, VerifyRequest
from api.services.certificate_pipeline import run_ara, run_sv_check, run_verify
from api.utils.http_errors import domain_errors_as_http

logger = logging.getLogger(__name__)

router = APIRouter(tags=["ara"])


@router.post("/ara/build", response_model=CertificateReport)
def build_certificate(body: AraBuildRequest) -> CertificateReport:
    if (body.forest is None) == (body.family is None):
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail="Give exactly one of 'forest' or 'family'",
        )
    with domain_errors_as_http():
        if body.family is not None:
            return run_ara(
                family=(body.family.name, body.family.args),
                levels=body.verify, fields=body.fields, cap=body.cap,
            )
        return run_ara(forest=body.forest.to_forest(), levels=body.verify, fields=body.fields, cap=body.cap)


@router.post("/ara/verify")
def verify_certificate(body: VerifyRequest) -> dict:
    with domain_errors_as_http():
        system = body.tls.to_system()
        result = run_verify(
            system,
            labels=body.tls.labels or [],
            target=body.tls.target_monomials(),
            levels=body.verify,
            fields=body.fields,
            cap=body.cap,
        )
    logger.info(f"verify: length={result['length']}, verified={result['verified']}")
    return result


@router.post("/sv/check", response_model=SvDoc)
def check_partition(body: SvCheckRequest) -> SvDoc:
    with domain_errors_as_http():
        return run_sv_check(body.partition)
