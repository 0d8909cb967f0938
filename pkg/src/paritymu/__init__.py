"""Parity games with draws, their mu-calculus and the Mediator preorder."""

from .game import (ADAM, DRAW, EVA, Game, GameError, ParseError, max_priority, parse,
                   parse_games, predecessor, serialize, top_positions, validate)

__all__ = ["ADAM", "DRAW", "EVA", "Game", "GameError", "ParseError", "max_priority", "parse",
           "parse_games", "predecessor", "serialize", "top_positions", "validate"]
