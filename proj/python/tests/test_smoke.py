import pytest

import khcube


def test_trefoil_homology_has_torsion():
    t = khcube.khovanov_homology(khcube.corpus_diagram("trefoil"))
    assert sum(free for free, _ in t.values()) == 4
    assert [tor for _, tor in t.values() if tor] == [[2]]


def test_unknot_reduced():
    d = khcube.parse_pd("PD[] circles=1")
    assert khcube.khovanov_homology(d, reduced=True) == {(0, 0): (1, [])}


def test_diagram_properties():
    d = khcube.corpus_diagram("trefoil")
    assert d.num_crossings == 3
    assert abs(d.writhe) == 3
    assert d.mirror().writhe == -d.writhe
    assert d.is_planar()


def test_t45_alexander_and_feasibility():
    d = khcube.torus_4_5()
    text, coeffs = khcube.alexander(d)
    assert text == "T^6-T^5+T^2-1+T^-2-T^-5+T^-6"
    assert sum(abs(c) for c in coeffs.values()) == 7
    ranks = khcube.rational_ranks(d.mirror(), reduced=True, reduced_shift=0)
    assert sum(ranks.values()) == 9
    assert khcube.mod4_betti(ranks) == [3, 1, 2, 3]
    rep = khcube.feasibility(ranks, 7, alexander_of=d)
    assert len(rep["placements"]) == 1


def test_spectral_sequence_limit_is_homology():
    d = khcube.corpus_diagram("figure_eight")
    total = sum(khcube.rational_ranks(d).values())
    ss = khcube.spectral_sequence(d, weight=(1, 0), seed=7)
    assert sum(g["rank"] for g in ss[-1]["groups"]) == total
    assert sum(g["rank"] for g in ss[0]["groups"]) > total


def test_errors_carry_codes():
    with pytest.raises(khcube.KhcubeError) as e:
        khcube.parse_pd("PD[X(1,2,3)]")
    assert e.value.args[0] == "MalformedPD"
    with pytest.raises(khcube.KhcubeError):
        khcube.khovanov_homology(khcube.corpus_diagram("trefoil"), reduced_shift=0)
