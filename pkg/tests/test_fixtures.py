import pytest

from finfty.algebras import (
    AlgebraSpec,
    LInfinityStructure,
    bracket_from_bv,
    operator_order,
    spec_from_dict,
    spec_to_dict,
    validate_dg,
    validate_dlie,
    validate_linf,
)
from finfty.exactq import rank
from finfty.fixtures import BUILDERS, DG_NAMES, corpus, dg_corpus, dgbv_fiber


def test_corpus_size_and_dims():
    specs = corpus()
    assert len(specs) == 10
    assert all(s.basis.dim <= 12 for s in specs.values())


def test_every_fixture_is_a_valid_dlie():
    for name, spec in corpus().items():
        rep = validate_dlie(spec)
        assert rep.ok, "%s: %s" % (name, rep)


def test_dg_subset_is_valid():
    for name, spec in dg_corpus().items():
        assert spec.has_dot() and spec.unit_index is not None
        rep = validate_dg(spec)
        assert rep.ok, "%s: %s" % (name, rep)


def test_every_fixture_gives_a_valid_linf():
    for name, spec in corpus().items():
        s = LInfinityStructure.from_spec(spec)
        rep = validate_linf(s, 3)
        assert rep.ok, "%s: %s" % (name, rep)


def test_serialization_round_trip_corpus():
    for name, spec in corpus().items():
        blob = spec_to_dict(spec)
        again = spec_from_dict(blob)
        assert spec_to_dict(again) == blob
        assert again.basis.names == spec.basis.names
        assert again.basis.degrees == spec.basis.degrees
        for field in ("differential", "bracket", "dot", "bv"):
            a, b = getattr(spec, field), getattr(again, field)
            if a is None or b is None:
                assert (a is None or a.is_zero()) and \
                    (b is None or b.is_zero())
            else:
                assert a == b
        assert again.unit_index == spec.unit_index
        assert again.tags == spec.tags


def test_fiber_model_bv_is_second_order_not_first():
    spec = dgbv_fiber()
    assert not operator_order(spec.bv, spec, 1)
    assert operator_order(spec.bv, spec, 2)


def test_fiber_model_bracket_matches_commutator_pattern():
    spec = dgbv_fiber()
    br = bracket_from_bv(spec)
    assert br == spec.bracket
    idx = {(a, b): spec.basis.index("E%d%d" % (a, b))
           for a in (1, 2) for b in (1, 2)}
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            expected = {}
            if b == c:
                k = idx[(a, d)]
                expected[k] = expected.get(k, 0) - 1
            if d == a:
                k = idx[(c, b)]
                expected[k] = expected.get(k, 0) + 1
            expected = {k: v for k, v in expected.items() if v}
            assert br.apply((i, j)) == expected, (a, b, c, d)


def test_fiber_model_homology_dims():
    # no differential: homology is the whole eight-dimensional space
    spec = dgbv_fiber()
    assert rank(spec.d_matrix()) == 0


def test_dgbv_with_d_rejects_the_contraction_as_bv():
    plain = dgbv_with_d_spec = BUILDERS["dgbv_with_d"]()
    fiber = dgbv_fiber()
    glued = AlgebraSpec(plain.basis, differential=plain.differential,
                        bracket=plain.bracket, dot=plain.dot,
                        unit_index=0, bv=fiber.bv)
    with pytest.raises(ValueError, match="d o bv"):
        bracket_from_bv(glued)


def test_dgbv_with_d_homology_dims():
    spec = BUILDERS["dgbv_with_d"]()
    assert rank(spec.d_matrix()) == 2      # image spanned by F11, F22


def test_massey6_homology_dims():
    spec = BUILDERS["massey6"]()
    assert rank(spec.d_matrix()) == 1
    # six-dimensional with one-dimensional image: homology has dimension 4


def test_fixture_json_dump(tmp_path, monkeypatch):
    import json
    import subprocess
    import sys

    monkeypatch.chdir(tmp_path)
    out = subprocess.run([sys.executable, "-m", "finfty.fixtures"],
                         capture_output=True, text=True, cwd=tmp_path)
    assert out.returncode == 0
    for name in BUILDERS:
        path = tmp_path / "fixtures" / (name + ".json")
        assert path.exists()
        blob = json.loads(path.read_text())
        assert spec_to_dict(spec_from_dict(blob)) == blob
