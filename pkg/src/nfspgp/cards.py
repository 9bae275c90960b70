"""Card primitives, the 7462-class hand evaluator, preflop rankings and
Monte-Carlo equity heuristics.

Hand classes use the standard equivalence numbering: 1 is a royal flush,
7462 is 7-5-4-3-2 with at least two suits.  The class tables are built at
import time by enumerating rank patterns in category order (straight flush,
quads, full house, flush, straight, trips, two pair, pair, high card).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

RANK_CHARS = "23456789TJQKA"
SUIT_CHARS = "shdc"
SUIT_SYMBOLS = "♠♥♦♣"

# One prime per rank; a 5-card rank multiset has a unique prime product.
PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

NUM_HAND_CLASSES = 7462
BEST_HAND_CLASS = 1
WORST_HAND_CLASS = 7462

HandClass = int  # 1..7462, 1 strongest


@dataclass(frozen=True, slots=True)
class Card:
    """A playing card: rank 0..12 (deuce..ace), suit 0..3 (s,h,d,c)."""

    rank: int
    suit: int

    def __post_init__(self) -> None:
        if not (0 <= self.rank <= 12 and 0 <= self.suit <= 3):
            raise ValueError(f"card out of range: rank={self.rank} suit={self.suit}")

    @property
    def id(self) -> int:
        """Stable 0..51 encoding (rank*4 + suit)."""
        return self.rank * 4 + self.suit

    @classmethod
    def from_id(cls, card_id: int) -> "Card":
        return cls(card_id >> 2, card_id & 3)

    @classmethod
    def from_str(cls, text: str) -> "Card":
        """Parse e.g. 'As', 'Td', '9c' (case-insensitive suit)."""
        if len(text) != 2:
            raise ValueError(f"bad card string: {text!r}")
        try:
            rank = RANK_CHARS.index(text[0].upper())
            suit = SUIT_CHARS.index(text[1].lower())
        except ValueError:
            raise ValueError(f"bad card string: {text!r}") from None
        return cls(rank, suit)

    def __str__(self) -> str:
        return RANK_CHARS[self.rank] + SUIT_CHARS[self.suit]


@dataclass(frozen=True, slots=True)
class EquityEstimate:
    """Win rate in [0,1] with ties counted as half-wins."""

    win_rate: float
    samples: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.win_rate <= 1.0):
            raise ValueError(f"win_rate out of [0,1]: {self.win_rate}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


def full_deck() -> list[Card]:
    return [Card.from_id(i) for i in range(52)]


def new_deck_shuffled(seed: int) -> list[Card]:
    """A seeded permutation of the 52-card deck."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(52)
    return [Card.from_id(int(i)) for i in order]


# ---------------------------------------------------------------------------
# Class tables.  Keys are base-13 encodings of the sorted (ascending) rank
# vector, so lookup is a single array index.  Flushes get their own table;
# a 5-card flush always has 5 distinct ranks.
# ---------------------------------------------------------------------------

_KEY_POWERS = np.array([13**i for i in range(5)], dtype=np.int64)
_TABLE_SIZE = 13**5

# Straight rank-bit sets, strongest first; the wheel (A-5) ranks lowest.
_STRAIGHT_RANKSETS: list[tuple[int, ...]] = [
    tuple(range(hi - 4, hi + 1)) for hi in range(12, 3, -1)
] + [(0, 1, 2, 3, 12)]


def _rankkey(ranks: Iterable[int]) -> int:
    rs = sorted(ranks)
    return sum(r * 13**i for i, r in enumerate(rs))


def _build_class_tables() -> tuple[np.ndarray, np.ndarray]:
    flush = np.zeros(_TABLE_SIZE, dtype=np.int16)
    unsuited = np.zeros(_TABLE_SIZE, dtype=np.int16)

    straight_keys = {_rankkey(rs) for rs in _STRAIGHT_RANKSETS}
    # Distinct-rank combos that are not straights, strongest first
    # (compared as descending rank tuples).
    kickers_desc = list(range(12, -1, -1))
    distinct_combos = [
        c
        for c in itertools.combinations(kickers_desc, 5)
        if _rankkey(c) not in straight_keys
    ]

    cls = 1
    for rs in _STRAIGHT_RANKSETS:  # straight flushes
        flush[_rankkey(rs)] = cls
        cls += 1
    for quad in kickers_desc:  # four of a kind
        for k in kickers_desc:
            if k != quad:
                unsuited[_rankkey([quad] * 4 + [k])] = cls
                cls += 1
    for trips in kickers_desc:  # full houses
        for pair in kickers_desc:
            if pair != trips:
                unsuited[_rankkey([trips] * 3 + [pair] * 2)] = cls
                cls += 1
    for combo in distinct_combos:  # flushes
        flush[_rankkey(combo)] = cls
        cls += 1
    for rs in _STRAIGHT_RANKSETS:  # straights
        unsuited[_rankkey(rs)] = cls
        cls += 1
    for trips in kickers_desc:  # three of a kind
        for k1, k2 in itertools.combinations([r for r in kickers_desc if r != trips], 2):
            unsuited[_rankkey([trips] * 3 + [k1, k2])] = cls
            cls += 1
    for hi, lo in itertools.combinations(kickers_desc, 2):  # two pair
        for k in kickers_desc:
            if k != hi and k != lo:
                unsuited[_rankkey([hi] * 2 + [lo] * 2 + [k])] = cls
                cls += 1
    for pair in kickers_desc:  # one pair
        for ks in itertools.combinations([r for r in kickers_desc if r != pair], 3):
            unsuited[_rankkey([pair] * 2 + list(ks))] = cls
            cls += 1
    for combo in distinct_combos:  # high card
        unsuited[_rankkey(combo)] = cls
        cls += 1

    assert cls - 1 == NUM_HAND_CLASSES
    return flush, unsuited


_FLUSH_BY_KEY, _UNSUITED_BY_KEY = _build_class_tables()

# Index tuples for the 21 five-card subsets of a seven-card hand.
_SUBSETS_5_OF_7 = tuple(itertools.combinations(range(7), 5))


def _subset_key_matrix() -> np.ndarray:
    """(7,21) matrix turning sorted 7-rank rows into all 21 subset keys."""
    m = np.zeros((7, len(_SUBSETS_5_OF_7)), dtype=np.int64)
    for j, sub in enumerate(_SUBSETS_5_OF_7):
        for pos, i in enumerate(sub):
            m[i, j] = 13**pos
    return m


_SUBSET_KEYS = _subset_key_matrix()
_SUBSET_KEYS_F32 = _SUBSET_KEYS.astype(np.float32)


def _require_distinct(cards: Sequence[Card], n: int) -> None:
    if len(cards) != n:
        raise ValueError(f"expected {n} cards, got {len(cards)}")
    if len({c.id for c in cards}) != n:
        raise ValueError("duplicate cards")


def rank5(cards: Sequence[Card]) -> HandClass:
    """Equivalence class of a 5-card hand (1 strongest .. 7462 weakest)."""
    _require_distinct(cards, 5)
    key = _rankkey(c.rank for c in cards)
    s0 = cards[0].suit
    if all(c.suit == s0 for c in cards[1:]):
        return int(_FLUSH_BY_KEY[key])
    return int(_UNSUITED_BY_KEY[key])


def rank7(cards: Sequence[Card]) -> HandClass:
    """Best (minimum) rank5 over all 21 five-card subsets of 7 cards."""
    _require_distinct(cards, 7)
    ranks = [c.rank for c in cards]
    suits = [c.suit for c in cards]
    best = WORST_HAND_CLASS + 1
    for sub in _SUBSETS_5_OF_7:
        key = _rankkey(ranks[i] for i in sub)
        s0 = suits[sub[0]]
        if all(suits[i] == s0 for i in sub[1:]):
            val = int(_FLUSH_BY_KEY[key])
        else:
            val = int(_UNSUITED_BY_KEY[key])
        if val < best:
            best = val
    return best


def rank5_batch(ranks: np.ndarray, suits: np.ndarray) -> np.ndarray:
    """Vectorized rank5 over an (N,5) rank array and matching suit array."""
    keys = np.sort(ranks, axis=1).astype(np.int64) @ _KEY_POWERS
    out = _UNSUITED_BY_KEY[keys].astype(np.int32)
    is_flush = (suits == suits[:, :1]).all(axis=1)
    if is_flush.any():
        out[is_flush] = _FLUSH_BY_KEY[keys[is_flush]]
    return out


def rank7_batch(ranks: np.ndarray, suits: np.ndarray) -> np.ndarray:
    """Vectorized rank7 over (N,7) rank/suit arrays."""
    # Sorted 7-card ranks keep every 5-subset sorted, so all 21 subset keys
    # come from one matmul (float32 keeps it in BLAS; keys < 2^24 so exact).
    sr = np.sort(ranks, axis=1).astype(np.float32)
    keys_all = (sr @ _SUBSET_KEYS_F32).astype(np.int32)
    best = _UNSUITED_BY_KEY[keys_all].min(axis=1).astype(np.int32)

    # Flush subsets exist only when one suit holds >= 5 of the 7 cards
    # (~3% of random hands); packed 3-bit counters find those rows.
    packed = (1 << (3 * suits.astype(np.int32))).sum(axis=1)
    flushy = np.flatnonzero(
        ((packed & 7) >= 5)
        | (((packed >> 3) & 7) >= 5)
        | (((packed >> 6) & 7) >= 5)
        | (((packed >> 9) & 7) >= 5)
    )
    if flushy.size:
        order = np.argsort(ranks[flushy], axis=1)
        fr = np.take_along_axis(ranks[flushy], order, axis=1).astype(np.int64)
        fs = np.take_along_axis(suits[flushy], order, axis=1)
        fb = best[flushy]
        for sub in _SUBSETS_5_OF_7:
            idx = list(sub)
            sub_s = fs[:, idx]
            is_flush = (sub_s == sub_s[:, :1]).all(axis=1)
            if is_flush.any():
                rows = np.flatnonzero(is_flush)
                keys = fr[rows][:, idx] @ _KEY_POWERS
                fb[rows] = np.minimum(fb[rows], _FLUSH_BY_KEY[keys])
        best[flushy] = fb
    return best


def _ids_to_rank_suit(ids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return ids >> 2, ids & 3


def rank7_ids_batch(ids: np.ndarray) -> np.ndarray:
    """rank7 over an (N,7) array of 0..51 card ids."""
    r, s = _ids_to_rank_suit(ids)
    return rank7_batch(r, s)


# ---------------------------------------------------------------------------
# Equity
# ---------------------------------------------------------------------------

_VALID_BOARD_SIZES = (0, 3, 4, 5)


def _check_spot(hole: Sequence[Card], board: Sequence[Card]) -> list[int]:
    if len(hole) != 2:
        raise ValueError("hole must be exactly 2 cards")
    if len(board) not in _VALID_BOARD_SIZES:
        raise ValueError(f"board size must be one of {_VALID_BOARD_SIZES}")
    dead = [c.id for c in hole] + [c.id for c in board]
    if len(set(dead)) != len(dead):
        raise ValueError("duplicate cards")
    return dead


def _remaining_ids(dead: Sequence[int]) -> np.ndarray:
    mask = np.ones(52, dtype=bool)
    mask[list(dead)] = False
    return np.flatnonzero(mask)


def _score_matchup(
    hero_ids: np.ndarray, opp_ids: np.ndarray, board_ids: np.ndarray
) -> float:
    """Sum of win scores (1 win, 0.5 tie) over aligned hero/opp/board rows."""
    hero7 = np.concatenate([np.broadcast_to(hero_ids, (board_ids.shape[0], 2)), board_ids], axis=1)
    opp7 = np.concatenate([opp_ids, board_ids], axis=1)
    hr = rank7_ids_batch(hero7)
    orr = rank7_ids_batch(opp7)
    return float(np.count_nonzero(hr < orr) + 0.5 * np.count_nonzero(hr == orr))


def equity_enumerate(hole: Sequence[Card], board: Sequence[Card]) -> EquityEstimate:
    """Exact equity vs a uniform random opponent hole over all completions.

    Postflop spots enumerate in well under a second; the preflop case walks
    every (board, opponent) completion and takes minutes, so reach for
    equity_mc when an estimate is enough.
    """
    dead = _check_spot(hole, board)
    hero = np.array([c.id for c in hole], dtype=np.int64)
    fixed_board = np.array([c.id for c in board], dtype=np.int64)
    rem = _remaining_ids(dead)
    need = 5 - len(board)

    total_score = 0.0
    total_n = 0
    if need == 0:
        opp = np.array(list(itertools.combinations(rem, 2)), dtype=np.int64)
        boards = np.broadcast_to(fixed_board, (opp.shape[0], 5))
        total_score = _score_matchup(hero, opp, boards)
        total_n = opp.shape[0]
    else:
        # Chunked enumeration over board completions; each completion spot
        # reduces to a river matchup over the then-remaining opponent holes.
        completions = np.array(list(itertools.combinations(rem, need)), dtype=np.int64)
        chunk = max(1, 2_000_000 // (len(rem) ** 2))
        for start in range(0, completions.shape[0], chunk):
            comp = completions[start : start + chunk]
            opp_rows = []
            board_rows = []
            for row in comp:
                left = np.setdiff1d(rem, row, assume_unique=True)
                opp = np.array(list(itertools.combinations(left, 2)), dtype=np.int64)
                full_board = np.concatenate([fixed_board, row])
                opp_rows.append(opp)
                board_rows.append(np.broadcast_to(full_board, (opp.shape[0], 5)))
            opp_all = np.concatenate(opp_rows)
            boards_all = np.concatenate(board_rows)
            total_score += _score_matchup(hero, opp_all, boards_all)
            total_n += opp_all.shape[0]

    return EquityEstimate(win_rate=total_score / total_n, samples=total_n)


def _sample_without_replacement(
    rng: np.random.Generator, pool: np.ndarray, k: int, n_samples: int
) -> np.ndarray:
    """(n_samples, k) rows of distinct draws from pool."""
    u = rng.random((n_samples, pool.shape[0]))
    idx = np.argpartition(u, k, axis=1)[:, :k]
    return pool[idx]


def equity_mc(
    hole: Sequence[Card],
    board: Sequence[Card],
    n_samples: int = 1000,
    seed: int | None = None,
) -> EquityEstimate:
    """Monte-Carlo estimate of equity_enumerate; deterministic per seed."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    dead = _check_spot(hole, board)
    hero = np.array([c.id for c in hole], dtype=np.int64)
    fixed_board = np.array([c.id for c in board], dtype=np.int64)
    rem = _remaining_ids(dead)
    need = 5 - len(board)

    rng = np.random.default_rng(seed)
    draws = _sample_without_replacement(rng, rem, 2 + need, n_samples)
    opp = draws[:, :2]
    boards = np.concatenate(
        [np.broadcast_to(fixed_board, (n_samples, len(board))), draws[:, 2:]], axis=1
    )
    score = _score_matchup(hero, opp, boards)
    return EquityEstimate(win_rate=score / n_samples, samples=n_samples)


def opponent_strength_mc(
    board: Sequence[Card], n_samples: int = 1000, seed: int | None = None
) -> EquityEstimate:
    """Mean normalized strength of a random opponent hole on this board.

    Strength of a 7-card class c is 1 - (c-1)/7461, so 1.0 is a royal flush.
    Boards shorter than 5 cards are completed randomly per sample.
    """
    if len(board) not in (3, 4, 5):
        raise ValueError("opponent strength needs a 3..5 card board")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    dead = [c.id for c in board]
    if len(set(dead)) != len(dead):
        raise ValueError("duplicate cards")
    rem = _remaining_ids(dead)
    need = 5 - len(board)
    fixed_board = np.array(dead, dtype=np.int64)

    rng = np.random.default_rng(seed)
    draws = _sample_without_replacement(rng, rem, 2 + need, n_samples)
    hands = np.concatenate(
        [draws[:, :2], np.broadcast_to(fixed_board, (n_samples, len(board))), draws[:, 2:]],
        axis=1,
    )
    classes = rank7_ids_batch(hands)
    strength = 1.0 - (classes - 1) / (NUM_HAND_CLASSES - 1)
    return EquityEstimate(win_rate=float(strength.mean()), samples=n_samples)


# ---------------------------------------------------------------------------
# Preflop rankings
# ---------------------------------------------------------------------------

PreflopRank = int  # 1..169, 1 strongest


def canonical_hole_name(hole: Sequence[Card]) -> str:
    """Canonical 169-class name, e.g. 'AA', 'AKs', 'AKo'."""
    if len(hole) != 2 or hole[0].id == hole[1].id:
        raise ValueError("hole must be 2 distinct cards")
    hi, lo = sorted((hole[0], hole[1]), key=lambda c: -c.rank)
    if hi.rank == lo.rank:
        return RANK_CHARS[hi.rank] * 2
    mark = "s" if hi.suit == lo.suit else "o"
    return RANK_CHARS[hi.rank] + RANK_CHARS[lo.rank] + mark


def _load_preflop_table() -> dict[str, int]:
    from . import _preflop_data

    table = dict(_preflop_data.PREFLOP_RANKS)
    if len(table) != 169 or sorted(table.values()) != list(range(1, 170)):
        raise RuntimeError("preflop table corrupt")
    return table


_PREFLOP_RANKS: dict[str, int] | None = None


def preflop_rank(hole: Sequence[Card]) -> PreflopRank:
    """Rank of the hole's canonical class, 1 (best, AA) .. 169."""
    global _PREFLOP_RANKS
    if _PREFLOP_RANKS is None:
        _PREFLOP_RANKS = _load_preflop_table()
    return _PREFLOP_RANKS[canonical_hole_name(hole)]


def preflop_table_lines() -> list[str]:
    """The 169-entry table as 'name,rank' lines in rank order."""
    global _PREFLOP_RANKS
    if _PREFLOP_RANKS is None:
        _PREFLOP_RANKS = _load_preflop_table()
    by_rank = sorted(_PREFLOP_RANKS.items(), key=lambda kv: kv[1])
    return [f"{name},{rank}" for name, rank in by_rank]


def write_preflop_cache(path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(preflop_table_lines()) + "\n")


def verify_preflop_cache(path: str) -> bool:
    """Regenerate the table text and byte-compare with the cache file."""
    with open(path, "rb") as fh:
        on_disk = fh.read()
    expected = ("\n".join(preflop_table_lines()) + "\n").encode("ascii")
    return on_disk == expected
