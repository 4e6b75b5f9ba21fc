"""
表达式解析器 - 递归下降
优先级: ^ > 一元负号 > * / > + -
+ - * / 左结合，^ 右结合；支持括号和内置函数调用
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List

from .nodes import FUNCTIONS, VARIABLES, BinaryOp, Call, Constant, Negate, Node, Variable
from ..utils.errors import ExpressionSyntaxError, UnknownIdentifierError


class TokenKind(Enum):
    """词法单元类型"""
    NUMBER = "number"
    IDENT = "ident"
    OPERATOR = "operator"
    LPAREN = "("
    RPAREN = ")"
    END = "end"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: int


# 十进制字面量，可带指数；不支持十六进制和下划线
_TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<operator>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)

_KIND_BY_GROUP = {
    "number": TokenKind.NUMBER,
    "ident": TokenKind.IDENT,
    "operator": TokenKind.OPERATOR,
    "lparen": TokenKind.LPAREN,
    "rparen": TokenKind.RPAREN,
}


def tokenize(source: str) -> List[Token]:
    """词法分析，末尾追加 END"""
    tokens: List[Token] = []
    position = 0
    while position < len(source):
        match = _TOKEN_PATTERN.match(source, position)
        if match is None:
            raise ExpressionSyntaxError(
                source, f"unexpected character {source[position]!r}", position
            )
        group = match.lastgroup
        if group != "space":
            tokens.append(Token(_KIND_BY_GROUP[group], match.group(), position))
        position = match.end()
    tokens.append(Token(TokenKind.END, "", len(source)))
    return tokens


class Parser:
    """
    递归下降解析器

    expression := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := ('-' | '+') unary | power
    power      := primary ('^' unary)?
    primary    := NUMBER | VARIABLE | FUNCTION '(' expression ')' | '(' expression ')'
    """

    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _is_operator(self, *symbols: str) -> bool:
        return self.current.kind is TokenKind.OPERATOR and self.current.text in symbols

    def _expect(self, kind: TokenKind, what: str) -> Token:
        if self.current.kind is not kind:
            raise self._error(f"expected {what}")
        return self._advance()

    def _error(self, message: str) -> ExpressionSyntaxError:
        token = self.current
        found = "end of input" if token.kind is TokenKind.END else repr(token.text)
        return ExpressionSyntaxError(self.source, f"{message}, found {found}", token.position)

    def parse(self) -> Node:
        if self.current.kind is TokenKind.END:
            raise self._error("empty expression")
        node = self._expression()
        if self.current.kind is not TokenKind.END:
            raise self._error("unexpected trailing input")
        return node

    def _expression(self) -> Node:
        node = self._term()
        while self._is_operator("+", "-"):
            op = self._advance().text
            node = BinaryOp(op, node, self._term())
        return node

    def _term(self) -> Node:
        node = self._unary()
        while self._is_operator("*", "/"):
            op = self._advance().text
            node = BinaryOp(op, node, self._unary())
        return node

    def _unary(self) -> Node:
        if self._is_operator("-"):
            self._advance()
            return Negate(self._unary())
        if self._is_operator("+"):
            self._advance()
            return self._unary()
        return self._power()

    def _power(self) -> Node:
        base = self._primary()
        if self._is_operator("^"):
            self._advance()
            # 右结合：指数部分重新进入 unary，从而也能写 2^-1
            return BinaryOp("^", base, self._unary())
        return base

    def _primary(self) -> Node:
        token = self.current
        if token.kind is TokenKind.NUMBER:
            self._advance()
            value = float(token.text)
            if value == float("inf"):
                raise ExpressionSyntaxError(
                    self.source, "numeric literal out of range", token.position
                )
            return Constant(value)
        if token.kind is TokenKind.IDENT:
            self._advance()
            if token.text in FUNCTIONS:
                self._expect(TokenKind.LPAREN, f"'(' after {token.text}")
                argument = self._expression()
                self._expect(TokenKind.RPAREN, "')'")
                return Call(token.text, argument)
            if token.text in VARIABLES:
                return Variable(token.text)
            raise UnknownIdentifierError(self.source, token.text, token.position)
        if token.kind is TokenKind.LPAREN:
            self._advance()
            node = self._expression()
            self._expect(TokenKind.RPAREN, "')'")
            return node
        raise self._error("expected a number, variable, function or '('")
