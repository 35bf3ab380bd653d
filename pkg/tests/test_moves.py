import pytest

from patpop.errors import IneligiblePattern, NoMove, NotInImage, NotRealizable
from patpop.moves import (
    apply_move,
    canonicalize_mover,
    find_site,
    has_move,
    move_candidates,
    nonimage_witness,
    psi,
    psi_codomain,
    psi_domain,
    psi_inverse,
    realize_spine_merge,
    tree_rewrite,
)
from patpop.perm import Occurrence, avoiders, is_132_avoiding
from patpop.trees import Node, permutation_spine_structure, spine_structure, tree_of_permutation

BIG = (15, 14, 16, 10, 7, 8, 9, 6, 11, 4, 3, 5, 2, 12, 1, 13)
SAMPLE_HOST = (11, 12, 8, 7, 9, 6, 10, 5, 4, 13, 2, 1, 3)
SAMPLE_IMAGE_HOST = (12, 11, 13, 9, 10, 6, 5, 7, 4, 8, 2, 1, 3)


def N(label, left=None, right=None):
    return Node(label, left, right)


def test_move_examples():
    assert apply_move((8, 6, 5, 3, 4, 7, 1, 2, 9), 7) == (8, 7, 6, 5, 3, 4, 1, 2, 9)
    assert apply_move((1, 2), 2) == (2, 1)
    assert apply_move((5, 3, 4, 6, 1, 2), 6) == (6, 5, 3, 4, 1, 2)


def test_lmr_decomposition():
    s = find_site((8, 6, 5, 3, 4, 7, 1, 2, 9), 7)
    assert (s.left, s.middle, s.right) == ({8}, {5, 3, 4}, {1, 2, 9})
    s = find_site((2, 1, 3), 3)
    assert (s.left, s.lower, s.middle, s.right) == (set(), 2, {1}, set())
    assert not (find_site((1, 2), 2).left | find_site((1, 2), 2).middle)


def test_candidates():
    assert move_candidates((3, 2, 1)) == []
    assert [s.value for s in move_candidates((2, 1, 3))] == [3]
    assert 7 in [s.value for s in move_candidates((8, 6, 5, 3, 4, 7, 1, 2, 9))]


def test_no_move_diagnostics():
    with pytest.raises(NoMove) as err:
        find_site((3, 2, 1), 3)
    assert err.value.as_dict()["condition"] == "order"
    assert not has_move((3, 2, 1), 3)


def brute_moves(sigma):
    """Values v admitting a move, by trying the literal reinsertion and
    checking the result avoids 132 and differs from sigma."""
    out = []
    for v in range(2, len(sigma) + 1):
        i, j = sigma.index(v - 1), sigma.index(v)
        if i < j:
            rest = [x for x in sigma if x != v]
            cand = tuple(rest[:i] + [v] + rest[i:])
            if is_132_avoiding(cand) and all(x > v for x in sigma[:i]) and all(x < v - 1 for x in sigma[i + 1:j]):
                out.append(v)
    return out


@pytest.mark.parametrize("n", range(1, 7))
def test_closure_and_existence(n):
    for sigma in avoiders(n):
        sites = move_candidates(sigma)
        assert [s.value for s in sites] == brute_moves(sigma)
        for s in sites:
            assert is_132_avoiding(apply_move(sigma, s.value))
        if sigma != tuple(range(n, 0, -1)):
            assert sites


def test_tree_rewrite_reattaches_subtree():
    lower = N(9, N(8, N(7)), N(6, None, N(5, N(4, None, N(3)), N(2))))
    want = N(16, N(15, None, N(14)), N(13, N(12, N(11, None, N(10, None, lower)), N(1))))
    assert tree_rewrite(tree_of_permutation(BIG), 11) == want
    assert tree_rewrite(tree_of_permutation((1, 2)), 2) == tree_of_permutation((2, 1))
    assert spine_structure(tree_rewrite(tree_of_permutation((3, 2, 4, 1)), 4)) == (4,)


def test_psi_worked_example():
    occ = Occurrence.from_values(SAMPLE_HOST, (12, 7, 9, 13, 2, 3))
    site = find_site((5, 3, 4, 6, 1, 2), 6)
    img = psi(occ, site)
    assert img == Occurrence.from_values(SAMPLE_IMAGE_HOST, (13, 10, 5, 7, 2, 3))
    assert img.pattern == apply_move((5, 3, 4, 6, 1, 2), 6)
    assert psi_inverse(img, site) == occ


def test_psi_minimal():
    site = find_site((1, 2), 2)
    occ = Occurrence((1, 2), (1, 2))
    assert psi(occ, site) == Occurrence((2, 1), (1, 2))
    assert psi_inverse(psi(occ, site), site) == occ


def test_psi_requires_eligible_pattern():
    # 7 is not the largest letter of 8653471
    with pytest.raises(IneligiblePattern):
        psi(Occurrence((1, 2, 3), (1, 2, 3)), find_site((1, 2, 3), 2))


def test_nonimage_witness():
    site = find_site((2, 3, 1), 3)
    w = nonimage_witness(site, 4)
    assert w is not None
    with pytest.raises(NotInImage):
        psi_inverse(w, site)
    assert len(psi_domain(site, 5)) < len(psi_codomain(site, 5))


def test_witness_absent_when_right_block_empty():
    site = find_site((1, 2), 2)
    assert nonimage_witness(site, 6) is None
    assert len(psi_domain(site, 6)) == len(psi_codomain(site, 6))


@pytest.mark.parametrize("k", range(2, 6))
def test_psi_injective_small(k):
    for tau in avoiders(k):
        if not has_move(tau, k):
            continue
        site = find_site(tau, k)
        images = [psi(o, site) for o in psi_domain(site, k + 1)]
        assert len(set(images)) == len(images)


def test_realize_spine_merge():
    assert realize_spine_merge((2, 2), 1, 2) == ((3, 2, 4, 1), 4)
    assert realize_spine_merge((1, 1), 1, 2) == ((1, 2), 2)
    sigma, v = realize_spine_merge((2, 1), 1, 2)
    assert permutation_spine_structure(sigma) == (2, 1)
    assert permutation_spine_structure(apply_move(sigma, v)) == (3,)


def test_canonicalize_mover():
    assert canonicalize_mover((8, 9, 5, 4, 3, 6, 2, 1, 7), 6) == (8, 7, 6, 9, 3, 4, 2, 5, 1)
    assert canonicalize_mover((1, 2), 2) == (1, 2)
    t = canonicalize_mover((3, 2, 4, 1), 4)
    assert permutation_spine_structure(t) == (2, 2)
    assert permutation_spine_structure(apply_move(t, 4)) == (4,)


def _realizable(tau, value):
    k = len(tau)
    before = permutation_spine_structure(tau)
    after = permutation_spine_structure(apply_move(tau, value))
    for t in avoiders(k):
        if has_move(t, k) and permutation_spine_structure(t) == before \
                and permutation_spine_structure(apply_move(t, k)) == after:
            return True
    return False


@pytest.mark.parametrize("k", range(2, 6))
def test_canonicalize_fails_exactly_when_unrealizable(k):
    for tau in avoiders(k):
        for s in move_candidates(tau):
            if _realizable(tau, s.value):
                t = canonicalize_mover(tau, s.value)
                assert permutation_spine_structure(t) == permutation_spine_structure(tau)
                assert permutation_spine_structure(apply_move(t, k)) == \
                    permutation_spine_structure(apply_move(tau, s.value))
            else:
                with pytest.raises(NotRealizable):
                    canonicalize_mover(tau, s.value)


def test_unrealizable_example():
    with pytest.raises(NotRealizable):
        canonicalize_mover((1, 2, 3), 2)
