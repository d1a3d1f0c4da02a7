#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Weighted word coverage utility for social stream summarization:
f(S) = sum over words w of max_{v in S} n(v, w) * p(w) * log(1 / p(w)).
"""

# Standard libs
import logging
import math
import pathlib
from collections import Counter
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Union

# User-defined libs
from knapwin.core.element import Element
from knapwin.core.oracle import UtilityOracle
from knapwin.utils.errors import MalformedRecordError
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)

# Words already reported as missing from the weight table
_REPORTED_UNKNOWN_WORDS = set()


class WordWeightTable:
    """
    Read-only map from word to its entropy weight p(w) * log(1 / p(w)).
    Instances are immutable and shared by every coverage oracle.
    """

    __slots__ = ("_probabilities", "_weights")

    def __init__(self, probabilities: Mapping[str, float]):
        weights = {}
        for word, prob in probabilities.items():
            prob = float(prob)
            if not 0.0 < prob <= 1.0:
                raise_exception(
                    f"Generation probability of word {word!r} is {prob}; "
                    "it must lie in (0, 1].",
                    ValueError,
                )
            weights[word] = prob * math.log(1.0 / prob)
        self._probabilities = MappingProxyType(dict(probabilities))
        self._weights = MappingProxyType(weights)

    def __len__(self):
        return len(self._weights)

    def __contains__(self, word):
        return word in self._weights

    def weight(self, word: str) -> float:
        """Returns the weight of a word; 0 for words outside the vocabulary"""
        try:
            return self._weights[word]
        except KeyError:
            if word not in _REPORTED_UNKNOWN_WORDS:
                _REPORTED_UNKNOWN_WORDS.add(word)
                LOGGER.warning(f"Word {word!r} is not in the vocabulary; using weight 0.")
            return 0.0

    @classmethod
    def from_weights(cls, weights: Mapping[str, float]) -> "WordWeightTable":
        """Builds a table from precomputed nonnegative word weights"""
        for word, weight in weights.items():
            if not weight >= 0.0:
                raise_exception(
                    f"Weight of word {word!r} is {weight}; it must be nonnegative.",
                    ValueError,
                )
        table = cls({})
        table._weights = MappingProxyType({w: float(x) for w, x in weights.items()})
        return table

    def probability(self, word: str) -> float:
        """Returns the generation probability p(w)"""
        return self._probabilities[word]

    @classmethod
    def from_corpus(cls, bags: Iterable[Mapping[str, int]]) -> "WordWeightTable":
        """
        Estimates p(w) as the share of word w among all word occurrences
        in the corpus.
        """
        counts = Counter()
        for bag in bags:
            counts.update(bag)
        total = sum(counts.values())
        if total == 0:
            return cls({})
        return cls({word: count / total for word, count in counts.items() if count > 0})

    @classmethod
    def from_file(cls, path: Union[str, pathlib.Path]) -> "WordWeightTable":
        """
        Reads a vocabulary file with one `word<TAB>p(w)` entry per line.
        Blank lines are ignored.
        """
        probabilities = {}
        with open(path, "r", encoding="utf-8") as fp:
            for line_number, line in enumerate(fp, start=1):
                if not line.strip():
                    continue
                parts = line.rstrip("\n").split("\t")
                if len(parts) != 2:
                    raise_exception(
                        f"Line {line_number} of vocabulary file {path} is not of the "
                        "form word<TAB>probability.",
                        MalformedRecordError,
                        line_number=line_number,
                    )
                try:
                    probabilities[parts[0]] = float(parts[1])
                except ValueError:
                    raise_exception(
                        f"Line {line_number} of vocabulary file {path} has a "
                        f"non-numeric probability {parts[1]!r}.",
                        MalformedRecordError,
                        line_number=line_number,
                    )
        return cls(probabilities)


def as_word_bag(payload) -> Dict[str, int]:
    """Normalizes a token list or a word-count mapping into a word-count dict"""
    if isinstance(payload, Mapping):
        return {str(word): int(count) for word, count in payload.items()}
    return dict(Counter(str(word) for word in payload))


class CoverageOracle(UtilityOracle):
    """
    Incremental weighted word coverage. The state keeps, for every word, the
    largest frequency among inserted elements (curmax).

    Parameters
    ----------
    table : WordWeightTable
        Shared word weights
    binary : bool, default = False
        If True, word frequencies are replaced by presence indicators
    """

    name = "coverage"

    def __init__(self, table: WordWeightTable, binary: bool = False):
        super().__init__()
        self.table = table
        self.binary = binary
        self.curmax: Dict[str, int] = {}

    def _frequencies(self, element: Element) -> Mapping[str, int]:
        bag = element.payload
        if self.binary:
            return {word: 1 for word, count in bag.items() if count > 0}
        return bag

    def gain(self, element: Element) -> float:
        total = 0.0
        for word, count in self._frequencies(element).items():
            excess = count - self.curmax.get(word, 0)
            if excess > 0:
                total += excess * self.table.weight(word)
        return total

    def _insert(self, element: Element) -> float:
        realized = self.gain(element)
        for word, count in self._frequencies(element).items():
            if count > self.curmax.get(word, 0):
                self.curmax[word] = count
        return realized

    def clone(self) -> "CoverageOracle":
        new = CoverageOracle(self.table, self.binary)
        new.curmax = dict(self.curmax)
        new.utility = self.utility
        return new

    def spawn(self) -> "CoverageOracle":
        return CoverageOracle(self.table, self.binary)

    def reset(self) -> None:
        self.curmax = {}
        self.utility = 0.0

    def recompute_utility(self) -> float:
        """Recomputes the utility from the stored per-word maxima"""
        return sum(count * self.table.weight(word) for word, count in self.curmax.items())


def coverage_utility(
    table: WordWeightTable, bags: Iterable[Mapping[str, int]], binary: bool = False
) -> float:
    """Evaluates the coverage utility of a set of word bags from scratch"""
    curmax = {}
    for bag in bags:
        for word, count in bag.items():
            count = min(count, 1) if binary else count
            curmax[word] = max(curmax.get(word, 0), count)
    return sum(count * table.weight(word) for word, count in curmax.items())


def coverage_gain(state: CoverageOracle, element: Element) -> float:
    """Functional form of CoverageOracle.gain"""
    return state.gain(element)
