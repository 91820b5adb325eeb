import json
import os

import _knotsurf as ks


def trefoil_json(weight=-3):
    return json.dumps({
        "vertices": [1, 2],
        "edges": [{"id": 1, "ends": [1, 2], "weight": weight}],
        "rotations": {"1": [1], "2": [1]},
    })


def theta_json(w1, w2, w3):
    return json.dumps({
        "vertices": [1, 2],
        "edges": [
            {"id": 1, "ends": [1, 2], "weight": w1},
            {"id": 2, "ends": [1, 2], "weight": w2},
            {"id": 3, "ends": [1, 2], "weight": w3},
        ],
        "rotations": {"1": [1, 2, 3], "2": [3, 2, 1]},
    })


def test_quantum_integer():
    assert ks.quantum_integer(2) == "q^-1 + q"


def test_trefoil_pipeline():
    d = ks.Diagram(trefoil_json())
    assert d.crossings == 3
    table = d.gluing_table()
    assert table.startswith("#tets")
    assert "#free" in table
    records = d.verify(2)
    assert records, "no colored surface states found"
    assert all(r["verdict"] for r in records)


def test_unknot_jones():
    d = ks.Diagram(json.dumps({
        "vertices": [1, 2],
        "edges": [{"id": 1, "ends": [1, 2], "weight": 1}],
        "rotations": {"1": [1], "2": [1]},
    }))
    assert d.jones(1) == "q^-1 + q"
    assert d.jones(2) == "q^-2 + 2 + q^2"


def test_khovanov_ranks():
    d = ks.Diagram(trefoil_json())
    ranks = d.khovanov_ranks()
    assert sum(r for (_, _, r) in ranks) >= 2


def test_theta_verify():
    d = ks.Diagram(theta_json(1, 1, -3))
    records = d.verify(2)
    assert any(r["route"] == "normal" for r in records)
    assert all(r["verdict"] for r in records)
