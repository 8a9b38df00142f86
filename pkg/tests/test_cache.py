import json

from tensor_envelope.cache import StructureCache, cache_key, composition_table, load_or_build
from tensor_envelope.regular import make_backend
from tensor_envelope.scalar import make_field
from tensor_envelope.verify import verify_highest_weight
from tensor_envelope.weights import build_algebra, highest_weight_category


def _algebra(t="2", N=2):
    return build_algebra(make_backend("finset_op"), make_field(t), N)


def test_cold_and_warm_builds_agree(tmp_path):
    cold = _algebra()
    assert load_or_build(tmp_path, cold) == "miss"
    warm = _algebra()
    assert load_or_build(tmp_path, warm) == "hit"
    # the warm algebra answers from the file before computing anything itself
    assert len(warm.D._comp) == len(composition_table(cold))
    assert composition_table(warm) == composition_table(cold)
    a = verify_highest_weight(highest_weight_category(cold), cold)
    b = verify_highest_weight(highest_weight_category(warm), warm)
    assert json.dumps(a, sort_keys=True, default=str) == json.dumps(b, sort_keys=True, default=str)


def test_keys_separate_specializations(tmp_path):
    cache = StructureCache(tmp_path)
    A2, A3, Ag = _algebra("2"), _algebra("3"), _algebra("generic")
    keys = [cache_key(A.cat, A.F, A.N) for A in (A2, A3, Ag)]
    assert len({cache.path(k) for k in keys}) == 3
    cache.store(A2)
    assert cache.load(A3) == "miss"
    assert cache.load(Ag) == "miss"


def test_tampered_file_is_rejected_and_rewritten(tmp_path):
    A = _algebra()
    cache = StructureCache(tmp_path)
    path = cache.store(A)
    payload = json.loads(path.read_text())
    payload["table"][5][5] += 1
    path.write_text(json.dumps(payload))
    B = _algebra()
    assert load_or_build(tmp_path, B) == "invalid"
    ok, _ = B.check_associativity()
    assert ok
    assert cache.load(_algebra()) == "hit"


def test_garbage_file_is_invalid(tmp_path):
    A = _algebra()
    cache = StructureCache(tmp_path)
    cache.path(cache_key(A.cat, A.F, A.N)).write_text("{not json")
    assert cache.load(A) == "invalid"


def test_disabled_without_directory():
    assert load_or_build(None, _algebra("3", 1)) == "disabled"
