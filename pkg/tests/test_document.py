"""Algebra documents: parsing, canonical text and builders"""

import glob
import os

import numpy as np
import pytest

from config.config import Config
from graded.errors import DocumentError
from graded.verdict import passed
from linfty.morphism import check_morphism
from linfty.structure import check_linfty
from document.document import load, parse, serialize

from tests.conftest import AFF1_ADJOINT

SL2_HEADER = """\
[format]
version = 1
name = sl2

[space g]
h = 0
e = 0
f = 0
"""


def _corpus_paths():
    pattern = os.path.join(Config.DOCUMENTS['directory'], '*' + Config.DOCUMENTS['extension'])
    return sorted(glob.glob(pattern))


def test_corpus_is_shipped():
    names = {os.path.basename(p) for p in _corpus_paths()}
    assert {'abelian.alg', 'sl2.alg', 'aff1_rb.alg', 'sl2_rmatrix.alg', 'aff1_to_sl2.alg'} <= names


@pytest.mark.parametrize('path', _corpus_paths(), ids=os.path.basename)
def test_canonical_text_is_stable(path):
    document = load(path)
    text = serialize(document)
    assert parse(text) == document
    assert serialize(parse(text)) == text


def test_abelian_canonical_text(corpus):
    expected = "[format]\nversion = 1\nname = abelian\n\n[space g]\na = 0\nb = 0\n\n[brackets]\n"
    assert serialize(load(corpus('abelian'))) == expected


def test_odd_words_are_reordered_with_sign():
    """In g[1] the degree-0 generators are odd, so e h = -h e"""
    document = parse(SL2_HEADER + "\n[brackets]\ne h -> e = -2\n")
    assert document.brackets == {('h', 'e'): {'e': 2}}
    assert "h e -> e = 2" in serialize(document)


def test_repeated_lines_accumulate_and_cancel():
    document = parse(SL2_HEADER + "\n[brackets]\nh e -> e = 1\nh e -> e = 1\ne f -> h = 1\nf e -> h = 1\n")
    assert document.brackets == {('h', 'e'): {'e': 2}}


@pytest.mark.parametrize('text', [
    SL2_HEADER + "\n[brackets]\nh e -> e = 1/0\n",
    SL2_HEADER + "\n[brackets]\nh q -> e = 1\n",
    SL2_HEADER + "h = 1\n",
    "[format]\nname = empty\n",
    SL2_HEADER + "\n[extras]\nh = 1\n",
    SL2_HEADER + "\n[brackets]\nh -> e = 1\n",
    SL2_HEADER + "\n[operator]\nh -> e = 1\n",
    SL2_HEADER + "\n[caps]\nmax_arity = 0\n",
    "[format]\nversion = 2\nname = future\n\n[space g]\nh = 0\n",
], ids=['zero-denominator', 'unknown-symbol', 'duplicate-symbol', 'missing-space', 'unknown-section',
        'wrong-degree', 'operator-without-V', 'non-positive-cap', 'future-version'])
def test_malformed_documents(text):
    with pytest.raises(DocumentError):
        parse(text)


def test_errors_carry_line_numbers():
    with pytest.raises(DocumentError) as info:
        parse(SL2_HEADER + "\n[brackets]\nh e -> e = 1/0\n")
    assert info.value.line == 11
    assert info.value.field == 'brackets'


def test_missing_file(tmp_path):
    with pytest.raises(DocumentError):
        load(str(tmp_path / 'missing.alg'))


def test_structure_builder(corpus):
    document = load(corpus('sl2'))
    assert document.cap() == 3
    assert document.cap(2) == 2
    structure = document.structure()
    assert passed(check_linfty(structure))
    assert structure.cap == 3


def test_pair_and_operator_builders(corpus):
    document = load(corpus('aff1_rb'))
    pair = document.pair()
    assert passed(pair.mc_check())
    for matrix, expected in zip(pair.matrices(), AFF1_ADJOINT):
        assert (np.array(matrix, dtype=object) == np.array(expected, dtype=object)).all()
    operator = document.rb_operator(pair.algebra)
    assert (operator.matrix() == np.array([[0, 1], [0, 0]], dtype=object)).all()


def test_rmatrix_builder(corpus):
    document = load(corpus('sl2_rmatrix'))
    assert document.shift == 2
    r = document.rmatrix()
    assert r.algebra.n == 2
    assert r.terms == {(r.algebra.v(0), r.algebra.v(1)): 1}


def test_rmatrix_lines_are_antisymmetric_for_even_shift():
    document = parse(SL2_HEADER + "\n[brackets]\n\n[rmatrix]\nshift = 2\ne h = 1\n")
    assert document.rmatrix == {('h', 'e'): -1}


def test_morphism_builder(corpus):
    document = load(corpus('aff1_to_sl2'))
    morphism = document.morphism()
    assert morphism.target.space.dim == 3
    assert passed(check_morphism(morphism))
