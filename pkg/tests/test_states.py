import pytest

from entrank.classify3 import classify3
from entrank.oracle import verify_decomposition
from entrank.states import (DECOMPOSITION_NAMES, STATE_NAMES, builtin_decomposition, builtin_state,
                            matmul_tensor, strassen_decomposition)
from entrank.tensor import basis_tensor


def test_catalog_contents():
    assert builtin_state("ghz3") == basis_tensor("000") + basis_tensor("111")
    assert builtin_state("w3") == basis_tensor("001") + basis_tensor("010") + basis_tensor("100")
    assert builtin_state("epr") == basis_tensor("00") + basis_tensor("11")
    assert builtin_state("paper_rank3") == (basis_tensor("000") + basis_tensor("110")
                                           + basis_tensor("101"))
    assert builtin_state("real_vs_complex") == (basis_tensor("000") - basis_tensor("011")
                                               + basis_tensor("101") + basis_tensor("110"))
    assert builtin_state("ghz4") == basis_tensor("0000") + basis_tensor("1111")
    assert all(builtin_state(n).exact for n in STATE_NAMES)


def test_classifications():
    assert classify3(builtin_state("ghz3")).case == "Rank2Generic"
    assert classify3(builtin_state("paper_rank3")).rank == 3


def test_matmul_tensor():
    t = matmul_tensor()
    assert t.shape == (4, 4, 4)
    assert sum(1 for x in t.entries if x != 0) == 8
    assert builtin_state("strassen222") == t


def test_strassen():
    d = builtin_decomposition("strassen_decomp")
    assert len(d) == 7 and d.exact
    assert verify_decomposition(builtin_state("strassen222"), d, None)
    assert strassen_decomposition() is strassen_decomposition()
    assert "strassen_decomp" in DECOMPOSITION_NAMES


def test_unknown():
    with pytest.raises(KeyError):
        builtin_state("nope")
    with pytest.raises(KeyError):
        builtin_decomposition("nope")
