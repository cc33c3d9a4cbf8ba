from contextlib import contextmanager

from fastapi import HTTPException, status

from api.errors import AraError, NotMinimal, NotStretched

UNPROCESSABLE = (NotStretched, NotMinimal)


def http_status_for(error: AraError) -> int:
    """400 for bad input, 422 for inputs outside a construction's domain, 500 for bugs."""
    if not error.input_error:
        return status.HTTP_500_INTERNAL_SERVER_ERROR
    if isinstance(error, UNPROCESSABLE):
        return status.HTTP_422_UNPROCESSABLE_ENTITY
    return status.HTTP_400_BAD_REQUEST


@contextmanager
def domain_errors_as_http():
    """Re-raise AraError as HTTPException with the error document as detail."""
    try:
        yield
    except AraError as e:
        raise HTTPException(status_code=http_status_for(e), detail=e.to_dict()) from e
