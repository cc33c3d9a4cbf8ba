# --- JSON documents for forests, ideals and family specs ---
from pydantic import BaseModel, Field

from api.enums import FamilyName
from api.services.graph_core import Forest, build_forest
from api.services.monomial_ideal import MonomialIdeal

FORMAT_VERSION = "1"


class EdgeListDoc(BaseModel):
    format_version: str = FORMAT_VERSION
    labels: list[str]
    edges: list[tuple[int, int]]

    def to_forest(self) -> Forest:
        return build_forest(len(self.labels), self.edges, self.labels)

    @classmethod
    def from_forest(cls, f: Forest) -> "EdgeListDoc":
        return cls(labels=[f.label(i) for i in range(f.n)], edges=f.edge_list)


class IdealDoc(BaseModel):
    format_version: str = FORMAT_VERSION
    nvars: int
    generators: list[list[int]]

    @classmethod
    def from_ideal(cls, ideal: MonomialIdeal) -> "IdealDoc":
        return cls(nvars=ideal.nvars, generators=[list(g.vars) for g in ideal.generators])


class FamilySpec(BaseModel):
    name: FamilyName
    args: list[int] = Field(min_length=1, max_length=2)
