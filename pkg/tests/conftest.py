import numpy as np
import pytest

from nfspgp.cards import Card


def make_cards(text: str) -> list[Card]:
    """Parse 'As Kd 7c' into Card objects."""
    return [Card.from_str(tok) for tok in text.split()]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
