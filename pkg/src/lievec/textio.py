"""Text grammar for coefficients, vector fields and algebra files.

Field syntax::

    field    := ['+'|'-'] term (('+'|'-') term)*   |  '0'
    term     := [factor ('*'? factor)* '*'?] 'd_' var
    factor   := rational | var ['^' nat] | ('exp'|'sin'|'cos') '(' linform ')' ['^' nat]
              | '(' coeff ')' ['^' nat]
    coeff    := ['+'|'-'] product (('+'|'-') product)*
    linform  := ['+'|'-'] lterm (('+'|'-') lterm)*
    lterm    := rational ['*'] var | var
    rational := int ['/' posint]

Juxtaposition means multiplication (``exp(2 x)``, ``3/4 x^2 y``). Whitespace
is ignored. Algebra files hold one declaration or generator per line::

    # comment
    vars: x, y
    weights: 3, 1          (optional)
    option jet-order = 8   (optional, repeatable)
    d_x
    y^2*d_x - exp(2x)*d_y
"""

from dataclasses import dataclass, field as dc_field

from ._rational import ONE, ZERO, Q
from .coeffring import COS, NONE, SIN, ExpPolyCoeff
from .errors import ParseError
from .vfield import RESERVED, VarContext, VectorField

# -- tokenizer ---------------------------------------------------------------


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos

    def __repr__(self):
        return f"{self.kind}:{self.value}"


def _tokenize(text, line=1):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word.startswith("d_"):
                toks.append(_Tok("dvar", word[2:], i))
            elif "_" in word:
                raise ParseError(f"invalid identifier {word!r}", line, i + 1, text)
            else:
                toks.append(_Tok("ident", word, i))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, i + 1, text)
    toks.append(_Tok("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, ctx, line=1):
        self.text = text
        self.ctx = ctx
        self.n = ctx.n
        self.line = line
        self.toks = _tokenize(text, line)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, expected):
        t = self.tok
        got = "end of input" if t.kind == "end" else repr(str(t.value))
        raise ParseError(f"expected {expected}, got {got}", self.line, t.pos + 1, self.text)

    def take(self, kind):
        if self.tok.kind != kind:
            self.error(repr(kind))
        t = self.tok
        self.i += 1
        return t

    def var_index(self, name, pos):
        try:
            return self.ctx.index(name)
        except ValueError:
            raise ParseError(f"unknown variable {name!r}", self.line, pos + 1, self.text) from None

    # rational := int ['/' posint]
    def rational(self):
        num = self.take("int").value
        if self.tok.kind == "/":
            self.i += 1
            t = self.take("int")
            if t.value == 0:
                raise ParseError("zero denominator", self.line, t.pos + 1, self.text)
            return Q(num, t.value)
        return Q(num)

    def nat_power(self):
        if self.tok.kind == "^":
            self.i += 1
            return self.take("int").value
        return 1

    def linform(self):
        lam = [ZERO] * self.n
        const = ZERO
        sign = ONE
        if self.tok.kind in "+-":
            sign = -ONE if self.tok.kind == "-" else ONE
            self.i += 1
        while True:
            coef = ONE
            had_num = self.tok.kind == "int"
            if had_num:
                coef = self.rational()
                if self.tok.kind == "*":
                    self.i += 1
                    if self.tok.kind != "ident":
                        self.error("variable")
            if self.tok.kind == "ident":
                t = self.take("ident")
                lam[self.var_index(t.value, t.pos)] += sign * coef
            elif not had_num:
                self.error("number or variable")
            else:
                const += sign * coef
            if self.tok.kind in "+-":
                sign = -ONE if self.tok.kind == "-" else ONE
                self.i += 1
                continue
            break
        if const:
            raise ParseError("constant offsets inside exp/sin/cos are not representable", self.line, self.tok.pos + 1, self.text)
        return lam

    def factor(self):
        t = self.tok
        n = self.n
        if t.kind == "int":
            return ExpPolyCoeff.const(n, self.rational())
        if t.kind == "(":
            self.i += 1
            inner = self.coeff()
            self.take(")")
            return inner ** self.nat_power()
        if t.kind == "ident":
            self.i += 1
            if t.value in RESERVED:
                self.take("(")
                lam = self.linform()
                self.take(")")
                if t.value == "exp":
                    f = ExpPolyCoeff.exp(n, lam)
                else:
                    f = ExpPolyCoeff.term(n, 1, trig=COS if t.value == "cos" else SIN, mu=lam)
                return f ** self.nat_power()
            j = self.var_index(t.value, t.pos)
            alpha = [0] * n
            alpha[j] = self.nat_power()
            return ExpPolyCoeff.monomial(n, alpha)
        self.error("factor")

    def _starts_factor(self):
        return self.tok.kind in ("int", "ident", "(")

    def product(self):
        acc = self.factor()
        while True:
            if self.tok.kind == "*":
                self.i += 1
                acc = acc * self.factor()
            elif self._starts_factor():
                acc = acc * self.factor()
            else:
                return acc

    def coeff(self):
        sign = ONE
        if self.tok.kind in "+-":
            sign = -ONE if self.tok.kind == "-" else ONE
            self.i += 1
        acc = self.product().scale(sign)
        while self.tok.kind in "+-":
            sign = -ONE if self.tok.kind == "-" else ONE
            self.i += 1
            acc = acc + self.product().scale(sign)
        return acc

    def term(self):
        n = self.n
        acc = ExpPolyCoeff.const(n, 1)
        while self.tok.kind != "dvar":
            if not self._starts_factor():
                self.error("factor or d_<var>")
            acc = acc * self.factor()
            if self.tok.kind == "*":
                self.i += 1
        t = self.take("dvar")
        j = self.var_index(t.value, t.pos)
        return VectorField.coordinate(self.ctx, j, acc)

    def field(self):
        if self.tok.kind == "int" and self.tok.value == 0 and self.toks[self.i + 1].kind == "end":
            self.i += 1
            return VectorField.zero(self.ctx)
        sign = ONE
        if self.tok.kind in "+-":
            sign = -ONE if self.tok.kind == "-" else ONE
            self.i += 1
        acc = self.term().scale(sign)
        while self.tok.kind in "+-":
            sign = -ONE if self.tok.kind == "-" else ONE
            self.i += 1
            acc = acc + self.term().scale(sign)
        if self.tok.kind != "end":
            self.error("'+', '-' or end of field")
        return acc


def parse_field(text, ctx, line=1):
    """Parse a vector field; raises :class:`ParseError` with position info."""
    if not isinstance(ctx, VarContext):
        ctx = VarContext(ctx)
    return _Parser(text, ctx, line).field()


def parse_coeff(text, ctx, line=1):
    if not isinstance(ctx, VarContext):
        ctx = VarContext(ctx)
    p = _Parser(text, ctx, line)
    out = p.coeff()
    if p.tok.kind != "end":
        p.error("end of expression")
    return out


# -- printing -----------------------------------------------------------------


def _qfmt(c):
    c = Q(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _names(n, names):
    if names is None:
        return [f"x{i}" for i in range(n)]
    if isinstance(names, VarContext):
        return list(names.names)
    return list(names)


def format_linform(vec, names):
    parts = []
    for c, nm in zip(vec, names):
        if not c:
            continue
        mag = abs(c)
        body = nm if mag == 1 else f"{_qfmt(mag)}*{nm}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


def _term_body(key, names):
    alpha, lam, kind, mu = key
    factors = []
    for a, nm in zip(alpha, names):
        if a == 1:
            factors.append(nm)
        elif a > 1:
            factors.append(f"{nm}^{a}")
    if any(lam):
        factors.append(f"exp({format_linform(lam, names)})")
    if kind != NONE:
        factors.append(f"{'cos' if kind == COS else 'sin'}({format_linform(mu, names)})")
    return factors


def _join_signed(items):
    """``items`` are (negative?, text) pairs."""
    out = []
    for neg, body in items:
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_coeff(f, names=None):
    names = _names(f.n, names)
    items = []
    for key, c in f.terms:
        factors = _term_body(key, names)
        mag = abs(c)
        if not factors:
            body = _qfmt(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_qfmt(mag)] + factors)
        items.append((c < 0, body))
    return _join_signed(items) or "0"


def format_field(X):
    names = list(X.ctx.names)
    items = []
    for j, comp in enumerate(X.components):
        for key, c in comp.terms:
            factors = _term_body(key, names)
            mag = abs(c)
            if mag != 1:
                factors = [_qfmt(mag)] + factors
            factors.append(f"d_{names[j]}")
            items.append((c < 0, "*".join(factors)))
    return _join_signed(items) or "0"


# -- algebra files -----------------------------------------------------------


@dataclass
class AlgebraFile:
    ctx: VarContext
    generators: list
    weights: list = None
    options: dict = dc_field(default_factory=dict)

    def to_text(self):
        lines = [f"vars: {', '.join(self.ctx.names)}"]
        if self.weights is not None:
            lines.append(f"weights: {', '.join(str(w) for w in self.weights)}")
        for k in sorted(self.options):
            lines.append(f"option {k} = {self.options[k]}")
        lines.extend(format_field(g) for g in self.generators)
        return "\n".join(lines) + "\n"


def _split_list(body):
    return [p.strip() for p in body.replace(",", " ").split() if p.strip()]


def parse_algebra_file(text):
    ctx = None
    weights = None
    options = {}
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("vars:") or low.startswith("vars "):
            if ctx is not None:
                raise ParseError("duplicate vars declaration", lineno, 1, raw)
            names = _split_list(line[5:].lstrip(":"))
            try:
                ctx = VarContext(names)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1, raw) from None
            continue
        if low.startswith("weights:") or low.startswith("weights "):
            try:
                weights = [int(w) for w in _split_list(line[8:].lstrip(":"))]
            except ValueError:
                raise ParseError("weights must be integers", lineno, 1, raw) from None
            continue
        if low.startswith("option "):
            body = line[7:]
            if "=" not in body:
                raise ParseError("expected 'option key = value'", lineno, 1, raw)
            k, v = body.split("=", 1)
            options[k.strip()] = v.strip()
            continue
        if ctx is None:
            raise ParseError("generator before 'vars:' declaration", lineno, 1, raw)
        gens.append(parse_field(line, ctx, line=lineno))
    if ctx is None:
        raise ParseError("missing 'vars:' declaration", 1, 1, text)
    if weights is not None and len(weights) != ctx.n:
        raise ParseError(f"expected {ctx.n} weights, got {len(weights)}", 1, 1, text)
    return AlgebraFile(ctx, gens, weights, options)


def load_algebra_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_file(fh.read())
