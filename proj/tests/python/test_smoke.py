import pytest

na = pytest.importorskip("_nodalarcs")


def test_field_primitives():
    assert na.find_nonsquare(19) == 2
    assert na.find_nonsquare(13) == 2
    assert na.is_square(19, 1, 4)
    assert not na.is_square(19, 1, 2)
    with pytest.raises(ValueError, match="ZeroInput"):
        na.is_square(19, 1, 0)


def test_mu_generator_and_powers():
    g = na.mu_generator(19)
    assert na.is_mth_power_in_mu(19, 1, g, 1)
    assert not na.is_mth_power_in_mu(19, 1, g, 5)
    assert na.param_to_point(19, 1, (1, 0)) == "Xinf"


def test_geometric_add_matches_group_law():
    g = na.mu_generator(13)
    P = na.param_to_point(13, 1, g)
    assert na.geometric_add(13, 1, P, "Xinf") == P


def test_coset_points_form_an_arc():
    pts = na.coset_points(19, 1, 5)
    assert len(pts) == 4
    assert len({tuple(p) for p in pts}) == 4


def test_exceptional_set_sizes():
    assert len(na.exceptional_set(19)) == 1
    assert len(na.exceptional_set(5)) == 3


def test_indep_sets():
    maximal, good = na.is_maximal_3indep([2], [[1]])
    assert maximal and not good
    s = na.build_product_3indep(5, 7)
    assert len(s["members"]) == 9
    assert s["good"]


def test_arc_pipeline():
    arc = na.build_arc(19, 1, 5)
    assert arc["schema"] == "nodal-arcs/1"
    assert len(arc["points"]) + len(arc["exceptional"]) == 7
    rep = na.verify_arc(arc, mode="exhaustive")
    assert rep["is_arc"]
    assert rep["arc_size"] == 7


def test_bicovering_pipeline_and_determinism():
    arc = na.build_bicovering(19, 1, 5)
    assert len(arc["M"]) == 2
    r1 = na.verify_arc(arc, mode="sample", samples=1000, seed=3, threads=1)
    r2 = na.verify_arc(arc, mode="sample", samples=1000, seed=3, threads=4)
    assert r1 == r2


def test_cap_build_q19_requires_coprime_factors():
    with pytest.raises(ValueError):
        na.build_cap(19, 1, 5, 10, 4)


def test_aux_identities():
    rep = na.aux_identities(19, 1, 5, trials=50, seed=1)
    assert rep["param_identity_ok"]
    assert rep["param_identity_checked"] == 50
    assert rep["m_paths_agree"]
    assert rep["g_determinant_ok"]


def test_aux_count_and_witnesses():
    cnt = na.aux_count(19, 1, 5, 3, 4)
    assert cnt["vacuous"]
    wit = na.aux_witnesses(19, 1, 5, 3, 4)
    assert wit["witnesses"] == wit["external"] + wit["internal"]
