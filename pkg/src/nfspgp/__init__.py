"""Self-play poker RL with an anticipatory strategy mixture and gradient-play response."""

__version__ = "0.1.0"
