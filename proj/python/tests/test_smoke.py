import pytest

import rqca


def test_counterexample_symmetrizer_and_residual():
    seed = rqca.counterexample_seed(9)
    assert seed.d == [3, 1]
    assert not rqca.satisfies_coprime(9, seed.d)
    r = rqca.exchange_identity(seed, 1)
    assert not r["pass"]
    assert r["reduced_residual"] == "(3)*X^[-9,18] + (3)*X^[-9,9]"


def test_load_and_mutate():
    seed = rqca.load_seed(
        {"l": 5, "N": 2, "ex": [1, 2], "lambda": [[0, 1], [-1, 0]], "B": [[0, 1], [-1, 0]]}
    )
    assert seed.ell == 5 and seed.rank == 2
    m = rqca.mutate(seed, [1])
    assert m.frame[0] == "(1)*X^[-1,1] + (1)*X^[-1,0]"
    back = rqca.load_seed(m.to_json())
    assert back.frame == m.frame
    assert rqca.mutate(seed, [1, 2, 1, 2, 1]).frame == list(reversed(seed.frame))


@pytest.mark.parametrize("name,nodes", [("A1xA1", 4), ("A2", 5), ("B2", 6), ("G2", 8)])
def test_exchange_graphs(name, nodes):
    seed = rqca.finite_type_seed(name, 5)
    g = rqca.explore(seed)
    assert g["complete"] and g["nodes"] == nodes
    iso = rqca.shadow_iso(seed)
    assert iso["isomorphic"] and iso["powers_match"]
    assert rqca.frobenius_check(seed, [1, 2, 1])["pass"]


def test_budget_and_errors():
    g = rqca.explore(rqca.finite_type_seed("G2", 5), max_nodes=3)
    assert not g["complete"]
    with pytest.raises(ValueError):
        rqca.load_seed({"l": 5})
    with pytest.raises(rqca.Error):
        rqca.unipotent_seed("A2", [1, 1])


def test_discriminants():
    seed = rqca.load_seed({"l": 3, "N": 2, "ex": [], "lambda": [[0, 1], [-1, 0]], "B": [[], []]})
    d = rqca.torus_discriminant(seed)
    assert d["verdict"] and d["exponents"] == [18, 18] and d["constant"] == str(3**18)
    w = rqca.weyl_discriminant(1, 3)
    assert w["verdict"] and w["rank"] == 9 and w["exponents"] == [18]
    u = rqca.unipotent_discriminant("A2", [1, 2], 3)
    assert u["verdict"] and u["exponents"] == [18, 18]


def test_unipotent_and_weyl_seed_data():
    u = rqca.unipotent_seed("B2", [1, 2, 1, 2])
    assert u["compat_scale"] == -2
    assert rqca.degree_identity("A1^(1)", [1, 2, 1, 2])
    s = rqca.weyl_seed(2, 3)
    assert s["compatible"] and s["mutation_matches_w"] and s["d"] == [2, 2]


def test_selftest():
    report = rqca.selftest()
    assert report["ok"]
    assert [c["id"] for c in report["criteria"]] == list(range(1, 10))
