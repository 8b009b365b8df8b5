"""Proof checking, Kripke semantics, decision procedures and finite canonical
models for the propositional modal logic S5."""

from .formula import BOT, Atom, Bot, Box, ClosureSet, Formula, Impl, closure, decode, dia, encode, neg
from .syntax import parse, parse_list, pretty

__all__ = [
    "BOT", "Atom", "Bot", "Box", "ClosureSet", "Formula", "Impl",
    "closure", "decode", "dia", "encode", "neg",
    "parse", "parse_list", "pretty",
]
