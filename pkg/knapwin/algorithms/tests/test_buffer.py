#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Installed libs
import pytest

# User-defined libs
from knapwin.algorithms import Candidate, CandidateBuffer, buffer_add
from knapwin.core import Element, KnapsackSpec, SolutionSet
from knapwin.utilities import ModularOracle


@pytest.fixture(name="candidate", scope="function")
def candidate_fixture():
    """Candidate with phi = 2, d = 1 and a buffer with alpha = 0.5"""
    return Candidate(1, 1.0, 1, ModularOracle(), CandidateBuffer(capacity=2, alpha=0.5))


@pytest.mark.parametrize("gain, admitted", [(0.3, True), (0.25, True), (0.2, False)])
def test_admission(candidate, gain, admitted):
    """Admission threshold alpha delta(v) phi / (1 + d) = 0.25"""
    element = Element(1, gain, [0.5])
    assert buffer_add(candidate, element, KnapsackSpec(1)) is admitted
    assert (element in candidate.buffer) is admitted


def test_members_and_missing_buffer(candidate):
    """Solution members and candidates without buffer are never buffered"""
    spec = KnapsackSpec(1)
    member = Element(1, 1.0, [0.5])
    candidate.solution.add(member, candidate.oracle.insert(member))
    assert not buffer_add(candidate, member, spec, gain=1.0)

    bare = Candidate(1, 1.0, 1, ModularOracle())
    assert not buffer_add(bare, Element(2, 1.0, [0.5]), spec)


def test_eviction_of_least_cost_effective():
    """Over capacity, the smallest cost-effectiveness goes first"""
    spec = KnapsackSpec(1)
    buffer = CandidateBuffer(capacity=2, alpha=0.5)
    low, mid, high = Element(1, 0, [0.1]), Element(2, 0, [0.1]), Element(3, 0, [0.1])
    buffer.push(mid, 0.05)
    buffer.push(low, 0.02)
    assert buffer.shrink(SolutionSet(1), spec) == []
    buffer.push(high, 0.09)
    assert buffer.shrink(SolutionSet(1), spec) == [low]
    assert sorted(buffer.ordinals) == [2, 3]


def test_infeasible_entries_are_purged_first():
    """Entries that no longer fit the solution are dropped before eviction"""
    spec = KnapsackSpec(1)
    solution = SolutionSet(1)
    solution.add(Element(9, 1.0, [0.5]), 1.0)

    buffer = CandidateBuffer(capacity=2, alpha=0.5)
    infeasible = Element(1, 0.3, [0.6])
    buffer.push(infeasible, 0.3)
    buffer.push(Element(2, 0.02, [0.1]), 0.02)
    buffer.push(Element(3, 0.01, [0.1]), 0.01)
    assert buffer.shrink(solution, spec) == [infeasible]
    assert sorted(buffer.ordinals) == [2, 3]


def test_buffer_copy():
    """Copies are independent"""
    buffer = CandidateBuffer(capacity=3, alpha=0.5)
    buffer.push(Element(1, 0.5, [0.5]), 0.5)
    clone = buffer.copy()
    clone.push(Element(2, 0.5, [0.5]), 0.5)
    assert len(buffer) == 1 and len(clone) == 2
    assert [e.ordinal for e in clone] == clone.ordinals
