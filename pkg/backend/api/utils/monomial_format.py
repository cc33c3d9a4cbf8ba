"""
Monomial list text format for the resolution command.

One monomial per line, factors joined by ``*`` with optional ``^k`` exponents,
e.g. ``a*b`` or ``x1^2*x3``. ``#`` starts a comment. Variable names get indices
in order of first appearance.
"""

import logging
import re
from pathlib import Path

from api.errors import ParseError
from api.services.lyubeznik import Monomial
from api.utils.edge_list_parser import strip_comment

logger = logging.getLogger(__name__)

FACTOR = re.compile(r"^([A-Za-z_][\w']*)(?:\^(\d+))?$")


def parse_monomials(text: str) -> tuple[list[Monomial], list[str]]:
    """
    Returns the minimal generators in input order and the variable labels.

    Repeated monomials and monomials divisible by an earlier or later one are
    dropped with a warning.
    """
    names: dict[str, int] = {}
    gens: list[Monomial] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw).replace(" ", "")
        if not line:
            continue
        exps: dict[int, int] = {}
        for factor in line.split("*"):
            match = FACTOR.match(factor)
            if not match:
                raise ParseError(f"Line {lineno}: cannot read factor {factor!r}", line=lineno)
            name, power = match.group(1), int(match.group(2) or 1)
            if power < 1:
                raise ParseError(f"Line {lineno}: exponent must be positive", line=lineno)
            idx = names.setdefault(name, len(names))
            exps[idx] = exps.get(idx, 0) + power
        gens.append(Monomial.of(exps))

    if not gens:
        raise ParseError("No monomials found")

    kept: list[Monomial] = []
    for g in gens:
        if g in kept:
            logger.warning(f"Dropping repeated generator {g.render(list(names))}")
            continue
        if any(h != g and h.divides(g) for h in gens):
            logger.warning(f"Dropping non-minimal generator {g.render(list(names))}")
            continue
        kept.append(g)
    labels = sorted(names, key=names.get)
    return kept, labels


def read_monomials(path: str | Path) -> tuple[list[Monomial], list[str]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e}")
    return parse_monomials(text)
