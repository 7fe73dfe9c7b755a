import itertools
import json

import pytest

import coarsedim as cd


def test_interval_is_unsat_and_oracle_agrees():
    line = cd.grid_space(1, 1, 2)
    res = cd.solve(line, [2], 2)
    assert res["status"] == "UNSAT"
    assert cd.oracle(line, [2], 2) == "UNSAT"
    assert cd.solve(line, [2, 2], 2)["status"] == "SAT"


def test_witness_survives_the_checker_and_a_tampered_one_does_not():
    line = cd.grid_space(1, 1, 8)
    res = cd.solve(line, [2, 2], 2)
    assert res["status"] == "SAT"
    cover = res["witness"]
    assert cd.check_cover(line, cover) == (True, None)
    cover["D"] = 0
    ok, predicate = cd.check_cover(line, cover)
    assert not ok
    assert predicate == "diameter"


def test_ranks_agree_across_methods():
    seqs = [(), (1,), (2,), (2, 1), (2, 3), (2, 3, 4)]
    nodes = {s for s in seqs}
    ranks = {m: cd.tree_rank(nodes, m)["rank"] for m in ("recursive", "levels", "kb")}
    assert ranks == {"recursive": 3, "levels": 3, "kb": 3}
    assert cd.tree_rank([], "recursive")["rank"] is None


def test_game_matches_empirical_tree_for_one_script():
    line = cd.grid_space(1, 1, 8)
    tree = cd.empirical_tree(line, 4, 2, 2)
    nodes = {tuple(n) for n in tree["tree"]["nodes"]}
    for r1, r2 in itertools.combinations_with_replacement(range(1, 5), 2):
        game = cd.play(line, 2, 8, 4, [r1, r2])
        survived = game["status"] == "ongoing" and len(game["rounds"]) == 2
        assert survived == ((r1, r2) in nodes)


def test_cli_and_errors():
    code, out, err = cd.run_cli(["space", "build", "grid", "--n", "1", "--k", "1", "--s", "2"])
    assert code == 0
    assert json.loads(out) == cd.grid_space(1, 1, 2)
    with pytest.raises(cd.CoarsedimError) as info:
        cd.run_suite("no-such-suite")
    assert info.value.code == "unknown-suite"
    assert cd.run_suite("kb-order", 7, 20)["passed"]


def test_service_session():
    svc = cd.Service()
    status, body = svc.request("POST", "/games", body={"space": "grid(n=1,k=1,s=8)", "bound": 2, "kcap": 4, "rmax": 6})
    assert status == 201, body
    status, body = svc.request("POST", f"/games/{body['id']}/move", body={"r": 2})
    assert status == 200
    assert body["k"] == 2
    status, body = svc.request("GET", "/games/999")
    assert status == 404
    assert body["error"] == "not-found"
