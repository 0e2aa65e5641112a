"""Text syntax for algebra elements.

Grammar (whitespace is insignificant except as a separator)::

    sum     := ['-'] product (('+' | '-') product)*
    product := power (('*' | '/' | <juxtaposition>) power)*
    power   := atom ['^' exponent]
    atom    := number | symbol | '(' sum ')' | call
    call    := ('qexp+' | 'qexp-') '(' sum ')' | 'qbessel' '(' int ',' sum ')'
             | 'zeta' '(' int ')' | 'exp' '(' sum ')'

Symbols are the scalars ``i q w``, the real parameters, the generators of
the function side (``eta+ eta- delta z+ z-``) and of the quantum algebra
side (``kappa p+ p- P+ P-``).  ``q^(k/2)`` gives half-integer q-powers.
The output of ``Element.render`` parses back to an equal element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .extended import EElement, z_key
from .quantum_algebra import UElement
from .reduced import AElement, zeta_idempotent
from .representations import cutoff_qexp, qbessel_cut
from .scalars import PARAMETERS, ParamScalar, field


class ParseError(ValueError):
    def __init__(self, pos: int, message: str):
        super().__init__(f"position {pos}: {message}")
        self.pos = pos
        self.message = message


A_GENERATORS = ("eta+", "eta-", "delta", "z+", "z-")
U_GENERATORS = ("kappa", "p+", "p-", "P+", "P-")
SCALAR_SYMBOLS = ("i", "q", "w")
FUNCTIONS = ("qexp+", "qexp-", "qbessel", "zeta", "exp")
_A_ONLY_FUNCTIONS = ("zeta", "exp")
_INVERTIBLE = ("delta", "kappa")

_WORDS = sorted(A_GENERATORS + U_GENERATORS + SCALAR_SYMBOLS + FUNCTIONS + PARAMETERS, key=len, reverse=True)
_IDENT_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_'")
_OPERATORS = set("-+*/^(),")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def _match_word(src: str, pos: int) -> str | None:
    for word in _WORDS:
        if src.startswith(word, pos):
            end = pos + len(word)
            # names ending in a sign are self-delimiting
            if word[-1] in "+-" or end == len(src) or src[end] not in _IDENT_CHARS:
                return word
    return None


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        ch = src[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            end = pos
            while end < len(src) and src[end].isdigit():
                end += 1
            tokens.append(Token("num", src[pos:end], pos))
            pos = end
        elif ch in _OPERATORS:
            tokens.append(Token("op", ch, pos))
            pos += 1
        else:
            word = _match_word(src, pos)
            if word is None:
                end = pos
                while end < len(src) and src[end] in _IDENT_CHARS:
                    end += 1
                raise ParseError(pos, f"unknown symbol {src[pos:max(end, pos + 1)]!r}")
            tokens.append(Token("word", word, pos))
            pos += len(word)
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, p: int, side: str | None):
        self.src = src
        self.p = p
        self.fld = field(p)
        self.side = side
        self.tokens = tokenize(src)
        self.i = 0

    # token helpers -------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            raise ParseError(self.tok.pos, f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.take()

    def claim_side(self, side: str, tok: Token) -> None:
        if self.side is None:
            self.side = side
        elif self.side != side:
            other = "A" if side == "U" else "U"
            raise ParseError(tok.pos, f"{tok.text!r} belongs to side {side} but the expression is on side {other}")

    # values: ParamScalar until a generator forces an element --------------
    def element_type(self):
        return UElement if self.side == "U" else EElement

    def lift(self, x):
        if isinstance(x, ParamScalar):
            return self.element_type().monomial(self.p, self.element_type().one_key(self.p), x)
        return x

    def combine(self, a, b, op: str, tok: Token):
        if isinstance(a, ParamScalar) and isinstance(b, ParamScalar):
            return {"+": a + b, "-": a - b, "*": a * b}[op]
        a, b = self.lift(a), self.lift(b)
        if type(a) is not type(b):
            raise ParseError(tok.pos, "cannot combine elements of different sides")
        return {"+": a + b, "-": a - b, "*": a * b}[op]

    # grammar ---------------------------------------------------------------
    def parse(self):
        value = self.sum()
        if self.tok.kind != "end":
            raise ParseError(self.tok.pos, f"unexpected {self.tok.text!r}")
        return value

    def sum(self):
        negate = False
        if self.tok.text in ("-", "+"):
            negate = self.take().text == "-"
        value = self.product()
        if negate:
            value = -value
        while self.tok.text in ("+", "-"):
            tok = self.take()
            value = self.combine(value, self.product(), tok.text, tok)
        return value

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "word") or t.text == "("

    def product(self):
        value = self.power()
        while True:
            tok = self.tok
            if tok.text == "*":
                self.take()
                value = self.combine(value, self.power(), "*", tok)
            elif tok.text == "/":
                self.take()
                den = self.power()
                value = self.divide(value, den, tok)
            elif self._starts_atom():
                value = self.combine(value, self.power(), "*", tok)
            else:
                return value

    def divide(self, num, den, tok: Token):
        if not isinstance(den, ParamScalar) or not den.is_constant():
            raise ParseError(tok.pos, "can only divide by a nonzero parameter-free scalar")
        c = den.constant()
        if not c:
            raise ParseError(tok.pos, "division by zero")
        inv = c.inverse()
        return num * inv if isinstance(num, ParamScalar) else num.scale(inv)

    def exponent(self) -> Fraction:
        tok = self.tok
        if tok.text == "(":
            self.take()
            sign = -1 if self.tok.text == "-" else 1
            if self.tok.text in ("+", "-"):
                self.take()
            num = self.expect_int()
            den = 1
            if self.tok.text == "/":
                self.take()
                den = self.expect_int()
                if den == 0:
                    raise ParseError(tok.pos, "zero denominator in exponent")
            self.expect(")")
            return Fraction(sign * num, den)
        if tok.text == "-":
            self.take()
            return Fraction(-self.expect_int())
        return Fraction(self.expect_int())

    def expect_int(self) -> int:
        t = self.tok
        if t.kind != "num":
            raise ParseError(t.pos, f"expected an integer, found {t.text or 'end of input'!r}")
        self.take()
        return int(t.text)

    def power(self):
        start = self.tok
        start_index = self.i
        base = self.atom()
        if self.tok.text != "^":
            return base
        bare = self.i == start_index + 1
        caret = self.take()
        e = self.exponent()
        if e.denominator != 1:
            if not (bare and start.text == "q" and e.denominator == 2):
                raise ParseError(caret.pos, "fractional exponents are only allowed as q^(k/2)")
            return ParamScalar.const(self.fld, self.fld.half_q_power(e.numerator))
        n = int(e)
        if n < 0:
            if isinstance(base, ParamScalar):
                if not base.is_constant() or not base:
                    raise ParseError(caret.pos, "negative power of a non-invertible scalar")
                return ParamScalar.const(self.fld, base.constant().inverse() ** (-n))
            if bare and start.text in _INVERTIBLE:
                return base ** (n % self.p)
            raise ParseError(caret.pos, "exponent out of range: negative powers only for scalars, delta and kappa")
        return base ** n

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.take()
            return ParamScalar.const(self.fld, int(tok.text))
        if tok.text == "(":
            self.take()
            value = self.sum()
            self.expect(")")
            return value
        if tok.kind != "word":
            raise ParseError(tok.pos, f"unexpected {tok.text or 'end of input'!r}")
        self.take()
        name = tok.text
        fld, p = self.fld, self.p
        if name in SCALAR_SYMBOLS:
            return ParamScalar.const(fld, {"i": fld.i, "q": fld.q, "w": fld.w}[name])
        if name in PARAMETERS:
            return ParamScalar.param(fld, name)
        if name in A_GENERATORS:
            self.claim_side("A", tok)
            if name == "eta+":
                return EElement.from_a(AElement.eta_plus(p))
            if name == "eta-":
                return EElement.from_a(AElement.eta_minus(p))
            if name == "delta":
                return EElement.from_a(AElement.delta(p))
            return EElement.z(p, 1 if name == "z+" else -1)
        if name in U_GENERATORS:
            self.claim_side("U", tok)
            return {
                "kappa": lambda: UElement.kappa(p, 1),
                "p+": lambda: UElement.p_plus(p),
                "p-": lambda: UElement.p_minus(p),
                "P+": lambda: UElement.P_plus(p),
                "P-": lambda: UElement.P_minus(p),
            }[name]()
        return self.call(tok)

    def call(self, tok: Token):
        name = tok.text
        if name in _A_ONLY_FUNCTIONS:
            self.claim_side("A", tok)
        self.expect("(")
        if name == "zeta":
            sign = -1 if self.tok.text == "-" else 1
            if self.tok.text == "-":
                self.take()
            m = sign * self.expect_int()
            self.expect(")")
            return EElement.from_a(zeta_idempotent(self.p, m))
        if name == "qbessel":
            m = self.expect_int()
            if not 0 <= m <= self.p - 1:
                raise ParseError(tok.pos, f"qbessel order must lie in [0, {self.p - 1}]")
            self.expect(",")
            x = self.sum()
            self.expect(")")
            return qbessel_cut(m, x, self.p)
        arg_pos = self.tok.pos
        x = self.sum()
        self.expect(")")
        if name == "exp":
            return self.exponential(x, arg_pos)
        return cutoff_qexp(x, 1 if name == "qexp+" else -1, self.p)

    def exponential(self, x, pos: int):
        if isinstance(x, ParamScalar):
            if x:
                raise ParseError(pos, "exp argument must be linear in z+ and z- without constant term")
            return EElement.one(self.p)
        u = ParamScalar(self.fld)
        v = ParamScalar(self.fld)
        for (akey, (a, b, eu, ev)), c in x.terms.items():
            if akey != (0, 0, 0) or eu or ev or (a, b) not in ((1, 0), (0, 1)):
                raise ParseError(pos, "exp argument must be linear in z+ and z- with scalar coefficients")
            if a:
                u = u + c
            else:
                v = v + c
        return EElement.monomial(self.p, ((0, 0, 0), z_key(self.p, 0, 0, u, v)))


def parse(src: str, p: int, side: str | None = None):
    """Parse ``src`` into a normal-formed element.

    ``side`` is "A" (function side: AElement, or EElement when z appears) or
    "U" (quantum algebra); None infers it from the first generator.  Pure
    scalars come back as elements of the requested side (A if unspecified).
    """
    if side not in (None, "A", "U"):
        raise ValueError(f"side must be 'A' or 'U', got {side!r}")
    parser = _Parser(src, p, side)
    value = parser.lift(parser.parse())
    if isinstance(value, EElement):
        try:
            return value.a_part()
        except ValueError:
            return value
    return value


__all__ = ["parse", "tokenize", "ParseError", "Token", "A_GENERATORS", "U_GENERATORS"]
