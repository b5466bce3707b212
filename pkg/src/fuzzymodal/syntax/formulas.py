"""Concrete syntax for modal and first-order formulas.

Modal: ``~`` negation, ``&`` conjunction, ``|`` disjunction, ``->``
implication, ``<>`` diamond, ``[]`` box, ``.-`` truncated subtraction of a
constant, rational literals ``p/q`` or finite decimals. Binding, tightest
first: prefix operators, ``.-``, ``&``, ``|``, ``->`` (right associative).

First-order: the same connectives plus ``E x.`` / ``A x.`` quantifiers
whose scope extends as far right as possible, ``R(x,y)``, ``p(x)`` and
``x = y``.
"""

from __future__ import annotations

from fractions import Fraction

from ..core import fol, modal
from ..core.truth import TruthRangeError, format_truth, parse_truth
from .lexer import ParseError, SourceSpan, Token, TokenStream

_PRIMARY_START = {"number", "ident", "(", "~", "<>", "[]"}


class _FormulaParser:
    ast = modal

    def __init__(self, text: str):
        self.ts = TokenStream(text)

    def parse(self):
        if self.ts.peek().kind == "eof":
            raise self.ts.error("formula expected", self.ts.peek(), _PRIMARY_START)
        phi = self.implication()
        tok = self.ts.peek()
        if tok.kind != "eof":
            raise self.ts.error(f"unexpected {tok.text!r}", tok, {"eof"})
        return phi

    def implication(self):
        left = self.disjunction()
        if self.ts.accept("->"):
            return self.ast.Implies(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.ts.accept("|"):
            left = self.ast.Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.subtraction()
        while self.ts.accept("&"):
            left = self.ast.And(left, self.subtraction())
        return left

    def subtraction(self):
        body = self.unary()
        while self.ts.accept(".-"):
            tok = self.ts.peek()
            if tok.kind != "number":
                raise self.ts.error("subtraction constant must be rational literal", tok, {"number"})
            body = self.ast.SubConst(body, self.literal(self.ts.next()))
        return body

    def unary(self):
        if self.ts.accept("~"):
            return self.ast.Neg(self.unary())
        return self.primary()

    def literal(self, tok: Token) -> Fraction:
        try:
            return parse_truth(tok.text)
        except TruthRangeError:
            raise self.ts.error("truth value outside [0,1]", tok) from None
        except ValueError as exc:
            raise self.ts.error(str(exc), tok) from None

    def primary(self):
        tok = self.ts.peek()
        if tok.kind == "number":
            self.ts.next()
            return self.ast.Const(self.literal(tok))
        if tok.kind == "(":
            self.ts.next()
            if self.ts.peek().kind in {")", "eof"}:
                raise self.ts.error("formula expected", self.ts.peek(), _PRIMARY_START)
            phi = self.implication()
            self.ts.expect(")")
            return phi
        if tok.kind == "eof":
            raise self.ts.error("formula expected", tok, _PRIMARY_START)
        return self.special(tok)

    def special(self, tok: Token):
        raise self.ts.error(f"unexpected {tok.text!r}", tok, _PRIMARY_START)


class ModalParser(_FormulaParser):
    ast = modal

    def unary(self):
        if self.ts.accept("<>"):
            return modal.Diamond(self.unary())
        if self.ts.accept("[]"):
            return modal.Box(self.unary())
        return super().unary()

    def special(self, tok):
        if tok.kind == "ident":
            self.ts.next()
            return modal.Atom(tok.text)
        return super().special(tok)


class FolParser(_FormulaParser):
    ast = fol

    def special(self, tok):
        ts = self.ts
        if tok.kind != "ident":
            return super().special(tok)
        if tok.text in ("E", "A") and ts.peek(1).kind == "ident":
            ts.next()
            var = ts.next().text
            ts.expect(".", "expected '.' after quantified variable")
            if ts.peek().kind == "eof":
                raise ts.error("formula expected", ts.peek(), _PRIMARY_START)
            body = self.implication()
            return fol.Exists(var, body) if tok.text == "E" else fol.Forall(var, body)
        ts.next()
        if ts.accept("("):
            first = ts.expect("ident", "variable expected").text
            if ts.accept(","):
                second = ts.expect("ident", "variable expected").text
                ts.expect(")")
                if tok.text != "R":
                    raise ts.error(f"{tok.text!r} is unary; only R is binary", tok)
                return fol.Rel(first, second)
            ts.expect(")")
            return fol.AtomApp(tok.text, first)
        if ts.accept("="):
            other = ts.expect("ident", "variable expected after '='").text
            return fol.Eq(tok.text, other)
        raise ts.error(f"bare identifier {tok.text!r}: expected p(x), R(x,y) or x = y", tok, {"(", "="})


def parse_modal(text: str) -> modal.ModalFormula:
    return ModalParser(text).parse()


def parse_fol(text: str) -> fol.FolFormula:
    return FolParser(text).parse()


# printing levels: 1 disjunction, 2 conjunction, 3 subtraction, 4 prefix, 5 atomic


def _paren(s: str, level: int, needed: int) -> str:
    return f"({s})" if level < needed else s


def print_modal(phi: modal.ModalFormula) -> str:
    def go(node, needed):
        if isinstance(node, modal.Const):
            return format_truth(node.value)
        if isinstance(node, modal.Atom):
            return node.name
        if isinstance(node, modal.Neg):
            return _paren("~" + go(node.body, 4), 4, needed)
        if isinstance(node, modal.Diamond):
            return _paren("<>" + go(node.body, 4), 4, needed)
        if isinstance(node, modal.SubConst):
            return _paren(f"{go(node.body, 3)} .- {format_truth(node.value)}", 3, needed)
        if isinstance(node, modal.And):
            return _paren(f"{go(node.left, 2)} & {go(node.right, 3)}", 2, needed)
        raise TypeError(f"not a modal formula: {node!r}")

    return go(phi, 0)


def print_fol(phi: fol.FolFormula) -> str:
    def go(node, needed):
        if isinstance(node, fol.Const):
            return format_truth(node.value)
        if isinstance(node, fol.AtomApp):
            return f"{node.atom}({node.var})"
        if isinstance(node, fol.Rel):
            return f"R({node.left},{node.right})"
        if isinstance(node, fol.Eq):
            return _paren(f"{node.left} = {node.right}", 5, needed)
        if isinstance(node, fol.Neg):
            return _paren("~" + go(node.body, 4), 4, needed)
        if isinstance(node, fol.SubConst):
            return _paren(f"{go(node.body, 3)} .- {format_truth(node.value)}", 3, needed)
        if isinstance(node, fol.And):
            return _paren(f"{go(node.left, 2)} & {go(node.right, 3)}", 2, needed)
        if isinstance(node, fol.Exists):
            return _paren(f"E {node.var}. {go(node.body, 5)}", 0, needed)
        raise TypeError(f"not a first-order formula: {node!r}")

    return go(phi, 0)


__all__ = ["ParseError", "SourceSpan", "parse_modal", "parse_fol", "print_modal", "print_fol"]
