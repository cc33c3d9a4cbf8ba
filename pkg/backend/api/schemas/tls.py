# --- JSON documents for tree-like systems and Schmitt-Vogel partitions ---
from typing import Annotated

from pydantic import BaseModel, Field

from api.errors import ParseError
from api.schemas.ideal import FORMAT_VERSION
from api.services.monomial_ideal import SquarefreeMonomial
from api.services.sv_verify import SvPartition
from api.services.tls import TlsElement, TreeLikeSystem


# a summand lists at least one variable; null marks an isolated element
Summand = Annotated[list[int], Field(min_length=1)]


class TlsElementDoc(BaseModel):
    left: Summand
    right: Summand | None = None


class TlsDoc(BaseModel):
    format_version: str = FORMAT_VERSION
    nvars: int
    labels: list[str] | None = None
    elements: list[TlsElementDoc]
    # monomials the system is meant to generate up to radical; defaults to its support
    target: list[list[int]] | None = None

    def to_system(self) -> TreeLikeSystem:
        elements = []
        for el in self.elements:
            right = SquarefreeMonomial.of(*el.right) if el.right is not None else None
            elements.append(TlsElement(left=SquarefreeMonomial.of(*el.left), right=right))
        top = max((i for el in elements for i in el.var_set), default=-1) + 1
        if top > self.nvars:
            raise ParseError(f"Variable index {top - 1} is outside nvars={self.nvars}")
        return TreeLikeSystem(elements=tuple(elements), nvars=self.nvars)

    def target_monomials(self) -> frozenset[SquarefreeMonomial] | None:
        if self.target is None:
            return None
        return frozenset(SquarefreeMonomial.of(*m) for m in self.target)

    @classmethod
    def from_system(cls, s: TreeLikeSystem, labels=None, target=None) -> "TlsDoc":
        return cls(
            nvars=s.nvars,
            labels=list(labels) if labels else None,
            elements=[
                TlsElementDoc(left=list(q.left.vars), right=list(q.right.vars) if q.right else None)
                for q in s.elements
            ],
            target=sorted(list(m.vars) for m in target) if target is not None else None,
        )


class PartitionDoc(BaseModel):
    format_version: str = FORMAT_VERSION
    blocks: list[list[list[int]]]
    exponents: dict[str, int] | None = None  # "i,j" -> exponent
    target: list[list[int]] | None = None  # defaults to the union of the blocks

    def to_partition(self) -> SvPartition:
        exps = {}
        for key, e in (self.exponents or {}).items():
            try:
                exps[SquarefreeMonomial.of(*(int(v) for v in key.split(",")))] = e
            except ValueError:
                raise ParseError(f"Bad exponent key {key!r}")
        blocks = tuple(tuple(SquarefreeMonomial.of(*m) for m in block) for block in self.blocks)
        target = frozenset(SquarefreeMonomial.of(*m) for m in self.target) if self.target is not None else None
        return SvPartition(blocks=blocks, exponents=exps, target=target)

    @classmethod
    def from_partition(cls, part: SvPartition) -> "PartitionDoc":
        return cls(
            blocks=[[list(m.vars) for m in block] for block in part.blocks],
            target=sorted(list(m.vars) for m in part.target) if part.target is not None else None,
        )
