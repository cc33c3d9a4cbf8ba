import pytest

from api.errors import ParseError
from api.services.lyubeznik import Monomial
from api.utils.monomial_format import parse_monomials, read_monomials


def test_parse_with_exponents_and_comments():
    gens, labels = parse_monomials("x1^2*x3   # leading\n\nx3 * y\n")
    assert labels == ["x1", "x3", "y"]
    assert gens == [Monomial.of({0: 2, 1: 1}), Monomial.of({1: 1, 2: 1})]


def test_repeated_and_non_minimal_generators_are_dropped():
    gens, labels = parse_monomials("a*b\nb*c\na*b\na^2*b*c\n")
    assert labels == ["a", "b", "c"]
    assert gens == [Monomial.squarefree(0, 1), Monomial.squarefree(1, 2)]


def test_repeated_factor_adds_exponents():
    gens, _ = parse_monomials("a*a*b")
    assert gens == [Monomial.of({0: 2, 1: 1})]


@pytest.mark.parametrize("text", ["a*2b", "a^0*b", "a**b", "# nothing here\n", ""])
def test_bad_input(text):
    with pytest.raises(ParseError):
        parse_monomials(text)


def test_read_monomials(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("a*b\na*c\n", encoding="utf-8")
    gens, labels = read_monomials(path)
    assert len(gens) == 2 and labels == ["a", "b", "c"]
    with pytest.raises(ParseError):
        read_monomials(tmp_path / "missing.txt")
