# --- request / response bodies shared by the HTTP API and the CLI ---
from typing import Any

from pydantic import BaseModel, Field

from api.enums import OrderMode, VerifyLevel
from api.schemas.ideal import FORMAT_VERSION, EdgeListDoc, FamilySpec, IdealDoc
from api.schemas.tls import PartitionDoc, TlsDoc


class InvariantsDoc(BaseModel):
    mu: int
    nu: int
    rho: int
    upper_bound: int


class PdStepDoc(BaseModel):
    vertex: str
    n: int
    edges: int
    pd_prime: int
    pd_double_prime: int
    value: int
    depth: int


class PdReport(BaseModel):
    pd: int
    components: list[int]
    trace: list[PdStepDoc] = []
    ideal: IdealDoc | None = None
    invariants: InvariantsDoc | None = None
    bound_collapsed: bool | None = None  # pd == mu - rho + 1


class SvDoc(BaseModel):
    ok: bool
    violation: str | None = None
    condition: str | None = None
    block: int | None = None


class OracleDoc(BaseModel):
    p: int
    equal: bool
    inclusion_ok: bool
    points: int
    witness: dict[str, int] | None = None  # label -> value


class CaseLogEntry(BaseModel):
    tag: str
    data: dict[str, Any] = {}


class CertificateReport(BaseModel):
    length: int
    pd: int
    family: str | None = None
    tls: TlsDoc
    rendered: list[str]
    strict_chains: list[list[int]] | None = None
    case_log: list[CaseLogEntry] = []
    valid: bool
    sv: SvDoc | None = None
    oracle: list[OracleDoc] | None = None
    partition: PartitionDoc | None = None
    verified: bool


class AraBuildRequest(BaseModel):
    forest: EdgeListDoc | None = None
    family: FamilySpec | None = None
    verify: list[VerifyLevel] = [VerifyLevel.SV]
    fields: list[int] | None = None
    cap: int | None = None


class VerifyRequest(BaseModel):
    tls: TlsDoc
    verify: list[VerifyLevel] = [VerifyLevel.SV, VerifyLevel.ORACLE]
    fields: list[int] | None = None
    cap: int | None = None


class SvCheckRequest(BaseModel):
    partition: PartitionDoc


class ResolutionRequest(BaseModel):
    generators: list[dict[str, int]] | None = None  # variable label -> exponent
    family: FamilySpec | None = None
    order: OrderMode = OrderMode.GIVEN
    matrices: bool = False


class MatrixEntryDoc(BaseModel):
    row: int
    col: int
    sign: int
    monomial: str


class ResolutionDoc(BaseModel):
    format_version: str = FORMAT_VERSION
    generators: list[str]
    ranks: list[int]  # rank of L^1 .. L^max
    betti: list[int] | None = None  # only for minimal complexes
    minimal: bool
    linear: bool | None = None
    complex_ok: bool  # d after d vanishes
    euler_characteristic: int
    bases: dict[int, list[list[int]]] | None = None
    matrices: dict[int, list[MatrixEntryDoc]] | None = None


class FamilyReport(BaseModel):
    name: str
    args: list[int]
    forest: EdgeListDoc
    pd: int
    mu: int
    rho: int
    upper_bound: int
    sharp: bool
    certificate: list[str]


class RunReport(BaseModel):
    format_version: str = FORMAT_VERSION
    command: str
    input_digest: str
    results: dict[str, Any]
    timings: dict[str, float] = Field(default_factory=dict)
