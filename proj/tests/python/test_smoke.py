import json

import pytest

import gammagen as gg


def test_matrix_basics():
    assert gg.gamma_qa(6, 5, 2) == ((5, -2), (-12, 5))
    assert gg.height(((5, -2), (-12, 5)), 6) == 5
    assert gg.in_gamma0("[[2,-1],[5,-2]]", 5)
    assert not gg.in_gamma1("[[2,-1],[5,-2]]", 5)
    assert gg.eval_word("TW", 7) == ((8, 1), (7, 1))
    with pytest.raises(gg.DomainError):
        gg.height("[[0,-1],[1,0]]", 2)


def test_indices_and_cosets():
    assert gg.index_gamma0(23) == 24
    assert gg.index_gamma1(5) == 24
    assert gg.subgroup_index(["[[1,1],[0,1]]", "[[1,0],[5,1]]", gg.gamma_qa(5, 2, 1)]) == 6
    assert gg.subgroup_index([((1, 1), (0, 1))], max_cosets=50) is None


def test_words_and_decomposition():
    assert gg.count_words(13, 5499) == 290841
    assert gg.count_words(5, 1) == 5
    text, count, back = gg.decompose(7, ((8, 3), (21, 8)))
    assert back == ((8, 3), (21, 8))
    assert count <= 3


def test_twists():
    assert gg.ramanujan_c(12, 8) == -2
    assert gg.character_count(60) == 16
    assert abs(gg.c_chi(5, [1], 1) - gg.c_chi(5, [1], 6)) < 1e-12
    assert gg.orthogonality_check(12)


def test_exactalg():
    assert gg.key_det_nonzero(1, 1, [3, 5], [[[1], [2]], [[2], [1, 3]]])
    with pytest.raises(gg.PreconditionError):
        gg.key_det_nonzero(3, 1, [3], [[[1]]])
    m, rows, cols = gg.hall_block_form([[True, True], [False, True]])
    assert m in (1, 2) and sorted(rows) == [0, 1] and sorted(cols) == [0, 1]


def test_commands():
    r = gg.commands.identities()
    assert r.exit_code == 0
    assert sum(not rec["expected"] for rec in r.records if rec["kind"] == "identity") == 1
    r = gg.commands.verify_hq(6, 5, 100)
    assert r.exit_code == 0 and all(rec["status"].startswith("verified") for rec in r.records)
    r = gg.commands.words(13, 5500, below=True)
    assert r.records == [{"N": 13, "height": 5500, "below": True, "count": 290841}]
    r = gg.commands.keydet_random(3, 5)
    assert r.exit_code == 0 and len(r.records) == 5
    r = gg.commands.decompose(7, "[[8,3],[21,8]]")
    assert r.records[0]["reconstructs"]


def test_twist_fe_from_json():
    coeffs = {"N": 1, "xi": "trivial", "bound": 50, "lambda": {str(p): "1/2" for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)}, "bad": {}}
    r = gg.commands.twist_fe(json.dumps(coeffs), 9, all_characters=True, oracle_x=50)
    assert r.exit_code == 0 and len(r.records) == 6
