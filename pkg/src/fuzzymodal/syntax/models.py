"""Line-oriented text format for models and state functions.

::

    # comment
    atoms: p q
    states: s1 s2
    val s1 p 1/2
    edge s1 s2 0.4

State functions use ``fun <state> <truth>`` lines, one per state.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..core.model import Model
from ..core.truth import TruthRangeError, format_truth, parse_truth
from .lexer import ParseError, SourceSpan

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def _lines(text: str):
    """Yield ``(line_offset, [(word, offset), ...])`` for non-empty lines."""
    offset = 0
    for raw in text.splitlines(keepends=True):
        body = raw.split("#", 1)[0]
        words = [(m.group(), offset + m.start()) for m in re.finditer(r"\S+", body)]
        if words:
            yield offset, words
        offset += len(raw)


class _Reader:
    def __init__(self, text):
        self.text = text

    def error(self, message, offset, length=0):
        return ParseError(message, SourceSpan.at(self.text, offset, offset + length))

    def truth(self, word, offset):
        try:
            return parse_truth(word)
        except TruthRangeError:
            raise self.error("truth value outside [0,1]", offset, len(word)) from None
        except ValueError:
            raise self.error(f"malformed truth value {word!r}", offset, len(word)) from None


def parse_model(text: str) -> Model:
    rd = _Reader(text)
    atoms: list[str] = []
    states: list[str] = []
    seen_states: dict[str, int] = {}
    entries = []
    saw_states = False
    for line_off, words in _lines(text):
        head, head_off = words[0]
        if head in ("atoms:", "states:"):
            if head == "atoms:":
                for w, off in words[1:]:
                    if not _IDENT.match(w):
                        raise rd.error(f"invalid atom name {w!r}", off, len(w))
                    if w in atoms:
                        raise rd.error(f"duplicate atom {w!r}", off, len(w))
                    atoms.append(w)
            else:
                saw_states = True
                for w, off in words[1:]:
                    if w in seen_states:
                        raise rd.error(f"duplicate state {w!r}", off, len(w))
                    seen_states[w] = off
                    states.append(w)
        elif head in ("val", "edge"):
            if len(words) != 4:
                raise rd.error(f"'{head}' takes exactly three arguments", head_off, len(head))
            entries.append((head, words))
        else:
            raise rd.error(f"unknown directive {head!r}", head_off, len(head))
    if not states:
        raise rd.error("at least one state required", 0 if not saw_states else len(text))

    atom_set = set(atoms)
    valuation: dict = {}
    relation: dict = {}
    for head, words in entries:
        (x, xo), (y, yo), (v, vo) = words[1:]
        if x not in seen_states:
            raise rd.error(f"unknown state {x!r}", xo, len(x))
        value = rd.truth(v, vo)
        if head == "val":
            if y not in atom_set:
                raise rd.error(f"undeclared atom {y!r}", yo, len(y))
            if (x, y) in valuation:
                raise rd.error(f"duplicate valuation for {x} {y}", words[0][1])
            valuation[x, y] = value
        else:
            if y not in seen_states:
                raise rd.error(f"unknown state {y!r}", yo, len(y))
            if (x, y) in relation:
                raise rd.error(f"duplicate edge {x} -> {y}", words[0][1])
            relation[x, y] = value
    return Model(states, atoms, valuation, relation)


def print_model(model: Model) -> str:
    lines = [
        "atoms: " + " ".join(model.atoms) if model.atoms else "atoms:",
        "states: " + " ".join(model.states),
    ]
    for s in model.states:
        for p in model.atoms:
            v = model.val(s, p)
            if v:
                lines.append(f"val {s} {p} {format_truth(v)}")
    for s in model.states:
        for t, v in model.successors(s).items():
            lines.append(f"edge {s} {t} {format_truth(v)}")
    return "\n".join(lines) + "\n"


def parse_state_function(text: str, model: Model) -> dict[str, Fraction]:
    """Read ``fun`` lines; the result must be total over the model's states."""
    rd = _Reader(text)
    f: dict[str, Fraction] = {}
    for line_off, words in _lines(text):
        head, head_off = words[0]
        if head != "fun":
            raise rd.error(f"expected 'fun', found {head!r}", head_off, len(head))
        if len(words) != 3:
            raise rd.error("'fun' takes a state and a truth value", head_off, len(head))
        (s, so), (v, vo) = words[1:]
        if s not in model:
            raise rd.error(f"unknown state {s!r}", so, len(s))
        if s in f:
            raise rd.error(f"duplicate value for state {s!r}", so, len(s))
        f[s] = rd.truth(v, vo)
    missing = [s for s in model.states if s not in f]
    if missing:
        raise rd.error(f"function not total: missing states {' '.join(missing)}", len(text))
    return {s: f[s] for s in model.states}


def print_state_function(f: dict[str, Fraction]) -> str:
    return "".join(f"fun {s} {format_truth(v)}\n" for s, v in f.items())
