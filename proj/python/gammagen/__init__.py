"""Exact verification of generating sets, word bounds and twist identities for Gamma0(N)."""

import json
from dataclasses import dataclass
from fractions import Fraction

from . import _core
from ._core import (
    DomainError,
    ParseError,
    PreconditionError,
    c_chi,
    character_count,
    count_words,
    hall_block_form,
    index_gamma0,
    index_gamma1,
    index_gamma_q,
    key_det_nonzero,
    orthogonality_check,
    ramanujan_c,
)

__all__ = [
    "CommandResult",
    "DomainError",
    "ParseError",
    "PreconditionError",
    "c_chi",
    "character_count",
    "commands",
    "count_words",
    "decompose",
    "eval_word",
    "gamma_qa",
    "hall_block_form",
    "height",
    "in_gamma0",
    "in_gamma1",
    "index_gamma0",
    "index_gamma1",
    "index_gamma_q",
    "is_elliptic_infinite",
    "key_det_nonzero",
    "orthogonality_check",
    "ramanujan_c",
    "subgroup_index",
]


def _to_text(m):
    if isinstance(m, str):
        return m
    (a, b), (c, d) = m
    return "[[{},{}],[{},{}]]".format(*(str(Fraction(x)) for x in (a, b, c, d)))


def _from_text(text):
    rows = text.strip()[2:-2].split("],[")
    return tuple(tuple(Fraction(x) if "/" in x else int(x) for x in r.split(",")) for r in rows)


def height(m, N):
    return int(_core.height(_to_text(m), N))


def gamma_qa(N, q, a):
    return _from_text(_core.gamma_qa(N, q, a))


def in_gamma0(m, N):
    return _core.in_gamma0(_to_text(m), N)


def in_gamma1(m, N):
    return _core.in_gamma1(_to_text(m), N)


def is_elliptic_infinite(m):
    return _core.is_elliptic_infinite(_to_text(m))


def subgroup_index(gens, max_cosets=2_000_000):
    """Index in SL2(Z), or None if the coset limit is reached."""
    return _core.subgroup_index([_to_text(g) for g in gens], max_cosets)


def eval_word(word, N):
    return _from_text(_core.eval_word(word, N))


def decompose(N, m):
    """(factorization text, gamma count, reconstructed matrix) for prime N."""
    text, count, back = _core.loggen_decompose(N, _to_text(m))
    return text, count, _from_text(back)


@dataclass
class CommandResult:
    records: list
    summary: str
    exit_code: int


class _Commands:
    def __getattr__(self, name):
        fn = getattr(_core.commands, name)

        def call(*args, **kwargs):
            if name == "decompose" and len(args) == 2:
                args = (args[0], _to_text(args[1]))
            records, summary, code = fn(*args, **kwargs)
            return CommandResult([json.loads(r) for r in records], summary, code)

        return call


commands = _Commands()
