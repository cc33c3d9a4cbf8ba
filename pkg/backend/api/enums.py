"""Shared enums for services, schemas and the CLI."""

from enum import Enum


class CaseTag(str, Enum):
    """Dispatch branches recorded by the stretched-forest builder (matches case_log JSON)."""

    MATCHING = "Matching"
    STAR_COMPONENT = "StarComponent"
    N_BIG = "NBig"
    CASE_1 = "Case1"
    CASE_2_1 = "Case2.1"
    CASE_2_2_1 = "Case2.2.1"
    CASE_2_2_2 = "Case2.2.2"
    CASE_3_INVERT = "Case3.invert"
    CASE_3_1A = "Case3.1a"
    CASE_3_1B = "Case3.1b"
    CASE_3_2 = "Case3.2"


class FamilyName(str, Enum):
    """Named graph families with closed-form invariants."""

    STAR = "star"
    LINE = "line"
    DOUBLE_STAR = "double-star"


class VerifyLevel(str, Enum):
    SV = "sv"
    ORACLE = "oracle"


class OrderMode(str, Enum):
    """Generator order used when building a Lyubeznik complex."""

    GIVEN = "given"
    LEX = "lex"
