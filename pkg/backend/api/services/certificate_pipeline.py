"""
CertificatePipeline ties the services together for the CLI and the HTTP API:
1. Parse / build the input (forest, family, system or generator list)
2. Compute pd and the generator-count bound
3. Build the tree-like system (stretched builder or closed form)
4. Verify it: tree-like validation, Schmitt-Vogel partition, finite-field oracle
5. Package everything as pydantic reports with timings
"""
import hashlib
import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from api import config
from api.enums import FamilyName, OrderMode, VerifyLevel
from api.errors import NotForestSupport, NotStretched
from api.schemas.ideal import EdgeListDoc, IdealDoc
from api.schemas.report import (
    CaseLogEntry,
    CertificateReport,
    FamilyReport,
    InvariantsDoc,
    MatrixEntryDoc,
    OracleDoc,
    PdReport,
    PdStepDoc,
    ResolutionDoc,
    RunReport,
    SvDoc,
)
from api.schemas.tls import PartitionDoc, TlsDoc
from api.services import lyubeznik
from api.services.ara_builder import AraCertificate, build_stretched_tls, family_certificate, family_forest
from api.services.graph_core import Forest
from api.services.monomial_ideal import SquarefreeMonomial, ara_bounds, edge_ideal, edge_monomial
from api.services.proj_dim import pd_forest
from api.services.radical_oracle import tls_vanishing_check, witness_in_original_vars
from api.services.sv_verify import SvCheck, sv_check, tls_to_partition, verify_system
from api.services.tls import TreeLikeSystem, decompose_strict, validate_tls

logger = logging.getLogger(__name__)


def input_digest(payload) -> str:
    """sha256 of a canonical JSON rendering of the input."""
    if hasattr(payload, "model_dump"):
        payload = payload.model_dump(mode="json")
    if not isinstance(payload, str):
        payload = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass
class Timer:
    timings: dict[str, float] = field(default_factory=dict)

    @contextmanager
    def step(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - start, 6)


def make_report(command: str, payload, results: dict, timer: Timer) -> RunReport:
    return RunReport(command=command, input_digest=input_digest(payload), results=results, timings=timer.timings)


def _sv_doc(check: SvCheck) -> SvDoc:
    return SvDoc(ok=check.ok, violation=check.violation, condition=check.condition, block=check.block)


def _label(labels: Sequence[str], i: int) -> str:
    return labels[i] if i < len(labels) else f"x{i}"


# ---------------------------------------------------------------------------

def run_pd(forest: Forest, with_bounds: bool = True, timer: Timer | None = None) -> PdReport:
    timer = timer or Timer()
    with timer.step("pd"):
        result = pd_forest(forest)
    report = PdReport(
        pd=result.value,
        components=result.components,
        trace=[
            PdStepDoc(
                vertex=forest.label(s.vertex), n=s.n, edges=s.edges, pd_prime=s.pd_prime,
                pd_double_prime=s.pd_double_prime, value=s.value, depth=s.depth,
            )
            for s in result.trace
        ],
    )
    if with_bounds and forest.edges:
        with timer.step("invariants"):
            bounds = ara_bounds(forest, pd_value=result.value)
        inv = bounds.invariants
        report.ideal = IdealDoc.from_ideal(edge_ideal(forest))
        report.invariants = InvariantsDoc(mu=inv.mu, nu=inv.nu, rho=inv.rho, upper_bound=bounds.upper_bound)
        report.bound_collapsed = bounds.collapsed
    return report


def verify_certificate(
    system: TreeLikeSystem,
    labels: Sequence[str],
    target: Iterable[SquarefreeMonomial] | None,
    levels: Iterable[VerifyLevel],
    fields: Sequence[int] | None,
    cap: int | None,
    timer: Timer,
) -> dict:
    """Run the requested verifications. Returns the pieces of a CertificateReport."""
    levels = set(levels)
    target_set = frozenset(target) if target is not None else None
    out: dict = {}

    with timer.step("validate"):
        out["valid"] = validate_tls(system).ok
    ok = out["valid"]

    if VerifyLevel.SV in levels:
        with timer.step("sv"):
            check = verify_system(system, target_set)
        out["sv"] = _sv_doc(check)
        if out["valid"]:
            out["partition"] = PartitionDoc.from_partition(tls_to_partition(system))
        ok = ok and check.ok

    if VerifyLevel.ORACLE in levels:
        primes = list(fields) if fields else config.default_fields()
        with timer.step("oracle"):
            results = tls_vanishing_check(system, primes, target=target_set, cap=cap)
        docs = []
        for p, res in results.items():
            witness = None
            if res.witness is not None:
                raw = witness_in_original_vars(system, res, target_set)
                witness = {_label(labels, i): val for i, val in raw.items()}
            docs.append(OracleDoc(p=p, equal=res.equal, inclusion_ok=res.inclusion_ok, points=res.points, witness=witness))
        out["oracle"] = docs
        ok = ok and all(d.equal and d.inclusion_ok for d in docs)

    out["verified"] = ok
    return out


def certificate_report(
    cert: AraCertificate,
    target: Iterable[SquarefreeMonomial] | None,
    levels: Iterable[VerifyLevel],
    fields: Sequence[int] | None = None,
    cap: int | None = None,
    timer: Timer | None = None,
) -> CertificateReport:
    timer = timer or Timer()
    target_set = frozenset(target) if target is not None else None
    pieces = verify_certificate(cert.system, cert.labels, target_set, levels, fields, cap, timer)
    try:
        chains = [list(c.positions) for c in decompose_strict(cert.system)]
    except (NotStretched, NotForestSupport):
        chains = None
    return CertificateReport(
        length=len(cert.system),
        pd=cert.pd_value,
        family=cert.family,
        tls=TlsDoc.from_system(cert.system, cert.labels, target_set),
        rendered=[q.render(cert.labels) for q in cert.system],
        strict_chains=chains,
        case_log=[CaseLogEntry(tag=tag.value, data=data) for tag, data in cert.case_log],
        **pieces,
    )


def run_ara(
    forest: Forest | None = None,
    family: tuple[FamilyName, list[int]] | None = None,
    levels: Iterable[VerifyLevel] = (VerifyLevel.SV,),
    fields: Sequence[int] | None = None,
    cap: int | None = None,
    timer: Timer | None = None,
) -> CertificateReport:
    timer = timer or Timer()
    if family is not None:
        name, args = family
        with timer.step("build"):
            cert = family_certificate(name, args)
            forest = family_forest(name, args)
    else:
        with timer.step("build"):
            cert = build_stretched_tls(forest)
    target = frozenset(edge_monomial(u, v) for u, v in forest.edges)
    report = certificate_report(cert, target, levels, fields, cap, timer)
    logger.info(f"ara certificate: length={report.length}, pd={report.pd}, verified={report.verified}")
    return report


def run_verify(
    system: TreeLikeSystem,
    labels: Sequence[str] = (),
    target: Iterable[SquarefreeMonomial] | None = None,
    levels: Iterable[VerifyLevel] = (VerifyLevel.SV, VerifyLevel.ORACLE),
    fields: Sequence[int] | None = None,
    cap: int | None = None,
    timer: Timer | None = None,
) -> dict:
    timer = timer or Timer()
    pieces = verify_certificate(system, labels, target, levels, fields, cap, timer)
    pieces["length"] = len(system)
    return {k: (v.model_dump() if hasattr(v, "model_dump") else [d.model_dump() for d in v] if isinstance(v, list) else v)
            for k, v in pieces.items()}


def run_sv_check(partition: PartitionDoc) -> SvDoc:
    return _sv_doc(sv_check(partition.to_partition()))


def run_resolution(
    gens: Sequence[lyubeznik.Monomial],
    labels: Sequence[str],
    order: OrderMode = OrderMode.GIVEN,
    with_matrices: bool = False,
    timer: Timer | None = None,
) -> ResolutionDoc:
    timer = timer or Timer()
    with timer.step("complex"):
        c = lyubeznik.build_complex(gens, order)
    with timer.step("checks"):
        minimal = lyubeznik.is_minimal(c)
        complex_ok = lyubeznik.composition_vanishes(c)
        betti = lyubeznik.betti_numbers(c) if minimal else None
        linear = lyubeznik.linearity_check(c) if minimal else None
    doc = ResolutionDoc(
        generators=[g.render(labels) for g in c.ordered_gens],
        ranks=[c.rank(t) for t in range(1, c.max_dim + 1)],
        betti=betti,
        minimal=minimal,
        linear=linear,
        complex_ok=complex_ok,
        euler_characteristic=lyubeznik.euler_characteristic(c),
    )
    if with_matrices:
        doc.bases = {t: [list(sym) for sym in c.basis(t)] for t in range(0, c.max_dim + 1)}
        doc.matrices = {
            t: [
                MatrixEntryDoc(row=e.row, col=e.col, sign=e.sign, monomial=e.monomial.render(labels))
                for e in lyubeznik.differential(c, t)
            ]
            for t in range(1, c.max_dim + 1)
        }
    return doc


def family_generators(name: FamilyName, args: list[int]) -> tuple[list[lyubeznik.Monomial], list[str]]:
    """Edge monomials of a family forest, double stars in the order ab, ax_i, by_j."""
    forest = family_forest(name, args)
    labels = [forest.label(i) for i in range(forest.n)]
    if FamilyName(name) is FamilyName.DOUBLE_STAR:
        return lyubeznik.double_star_generators(*args), labels
    return [lyubeznik.Monomial.squarefree(u, v) for u, v in forest.edge_list], labels


def run_family(name: FamilyName, args: list[int]) -> FamilyReport:
    forest = family_forest(name, args)
    cert = family_certificate(name, args)
    bounds = ara_bounds(forest, pd_value=cert.pd_value)
    inv = bounds.invariants
    return FamilyReport(
        name=FamilyName(name).value,
        args=args,
        forest=EdgeListDoc.from_forest(forest),
        pd=cert.pd_value,
        mu=inv.mu,
        rho=inv.rho,
        upper_bound=bounds.upper_bound,
        sharp=bounds.collapsed,
        certificate=[q.render(cert.labels) for q in cert.system],
    )

