"""Smoke test for the teamgroup extension module.

Build and install first:  maturin develop -m crates/py/Cargo.toml
"""

import json

import teamgroup

NETWORK = {
    "skills": ["HTML", "MySQL", "JavaScript", "PHP"],
    "individuals": [
        {"id": "a", "skills": ["HTML", "MySQL"]},
        {"id": "b", "skills": ["JavaScript"]},
        {"id": "c", "skills": ["HTML", "PHP"]},
    ],
    "edges": [["a", "b"]],
    "tasks": [
        {"id": "t1", "skills": ["HTML", "MySQL", "JavaScript", "PHP"], "profit": 50},
        {"id": "t2", "skills": ["JavaScript", "HTML"], "profit": 10},
        {"id": "t3", "skills": ["PHP"], "profit": 5},
    ],
    "compatibility": {"mode": "connected"},
}


def main():
    net1 = teamgroup.Instance.from_json(json.dumps(NETWORK))
    assert teamgroup.Instance.from_json(net1.to_json()) == net1
    assert net1.individuals == ["a", "b", "c"]

    res = teamgroup.solve(net1)
    assert res["profit"] == 15.0, res
    assert abs(res["lp_bound"] - 15.0) < 1e-6
    assert teamgroup.brute_force_optimal(net1)["profit_exact"] == "15"

    net2_doc = dict(NETWORK, edges=[["a", "b"], ["b", "c"]])
    net2 = teamgroup.Instance.from_json(json.dumps(net2_doc))
    res = teamgroup.solve(net2, algorithm="approx-tg", pricing="exact")
    assert res["profit"] == 50.0
    assert res["assignments"] == [("t1", ["a", "b", "c"])]
    assert teamgroup.lp_bound(net2)["lp_bound"] > 50.0 - 1e-6
    assert teamgroup.minimal_teams(net2, "t2") == [["a", "b"], ["b", "c"]]

    a = teamgroup.solve(net2, algorithm="rand-round", seed=7)
    b = teamgroup.solve(net2, algorithm="rand-round", seed=7)
    assert a == b

    try:
        teamgroup.solve(net2, pricing="greedy")
    except teamgroup.PricingMismatch:
        pass
    else:
        raise AssertionError("greedy pricing accepted under connectivity")

    bad = dict(NETWORK, edges=[["a", "z"]])
    diagnostics = teamgroup.validate(json.dumps(bad))
    assert len(diagnostics) == 1 and "z" in diagnostics[0], diagnostics
    try:
        teamgroup.Instance.from_json(json.dumps(bad))
    except teamgroup.InstanceError:
        pass
    else:
        raise AssertionError("invalid instance accepted")

    print("smoke test ok:", repr(net2))


if __name__ == "__main__":
    main()
