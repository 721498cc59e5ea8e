"""Abstract syntax, parser and printer for the rule language.

Surface syntax is Prolog-flavoured:

    grey(bugs).
    white(roger) :- ~grey(roger).
    q :- forall X. p(X).

  * identifiers starting with a lowercase letter name predicates,
    functions and constants; identifiers starting with an uppercase
    letter or an underscore are variables
  * ``~`` is negation, ``&`` conjunction, ``|`` disjunction; ``~``
    binds tightest, then ``&``, then ``|``
  * quantifier bodies extend as far right as possible:
    ``p & forall X. q(X) | r`` reads ``p & (forall X. (q(X) | r))``
  * ``true`` / ``false`` are the verum / falsum formulas; a fact
    ``p.`` is shorthand for ``p :- true.``
  * ``%`` starts a comment running to the end of the line
  * optional declaration headers pin symbols that inference cannot
    see: ``#pred p/2.``  ``#func f/1.``  ``#const a.``

The signature (predicate/function arities, constants) is inferred from
use; conflicting arities are rejected.  A program that mentions no
constant gets a default one injected, since the term universe must not
be empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError, SignatureError

# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


def _cached_hash(cls):
    """Memoize the generated hash; deep terms are dict keys everywhere
    and would otherwise re-hash their whole subtree on every lookup."""
    generated = cls.__hash__

    def __hash__(self):
        value = self.__dict__.get("_hash")
        if value is None:
            value = generated(self)
            object.__setattr__(self, "_hash", value)
        return value

    cls.__hash__ = __hash__
    return cls


class Term:
    """Base class of first-order terms."""

    def __str__(self) -> str:
        return render_term(self)


@_cached_hash
@dataclass(frozen=True)
class Const(Term):
    name: str


@_cached_hash
@dataclass(frozen=True)
class Var(Term):
    name: str


@_cached_hash
@dataclass(frozen=True)
class Func(Term):
    name: str
    args: tuple[Term, ...]


class Formula:
    """Base class of formulas."""

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@_cached_hash
@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Rule:
    """head :- body, where the head is a predicate atom."""

    head: Atom
    body: Formula

    def __str__(self) -> str:
        return render_rule(self)


@dataclass(frozen=True)
class Signature:
    """Symbol inventory: (name, arity) pairs plus the constant pool."""

    predicates: tuple[tuple[str, int], ...]
    functions: tuple[tuple[str, int], ...]
    constants: tuple[str, ...]

    def __post_init__(self) -> None:
        for label, pairs in (("predicate", self.predicates), ("function", self.functions)):
            names = [name for name, _ in pairs]
            if len(names) != len(set(names)):
                raise SignatureError(f"duplicate {label} name in signature")
        if len(self.constants) != len(set(self.constants)):
            raise SignatureError("duplicate constant in signature")
        if not self.constants:
            raise SignatureError("signature needs at least one constant")
        for name, arity in self.functions:
            if arity < 1:
                raise SignatureError(f"function {name} must have arity >= 1")


@dataclass(frozen=True)
class Program:
    signature: Signature
    rules: tuple[Rule, ...]

    def __str__(self) -> str:
        return render_program(self)


# ---------------------------------------------------------------------------
# Structural measures
# ---------------------------------------------------------------------------


def negation_degree(formula: Formula) -> int:
    """Maximum nesting depth of negation.

    Binary connectives take the max of their branches, quantifiers are
    transparent, and each negation adds one.
    """
    if isinstance(formula, (Top, Bottom, Atom)):
        return 0
    if isinstance(formula, Not):
        return 1 + negation_degree(formula.body)
    if isinstance(formula, (And, Or)):
        return max(negation_degree(formula.left), negation_degree(formula.right))
    if isinstance(formula, (Forall, Exists)):
        return negation_degree(formula.body)
    raise TypeError(f"not a formula: {formula!r}")


def term_variables(term: Term) -> frozenset[str]:
    if isinstance(term, Const):
        return frozenset()
    if isinstance(term, Var):
        return frozenset((term.name,))
    if isinstance(term, Func):
        out: frozenset[str] = frozenset()
        for arg in term.args:
            out |= term_variables(arg)
        return out
    raise TypeError(f"not a term: {term!r}")


def free_variables(formula: Formula) -> frozenset[str]:
    if isinstance(formula, (Top, Bottom)):
        return frozenset()
    if isinstance(formula, Atom):
        out: frozenset[str] = frozenset()
        for arg in formula.args:
            out |= term_variables(arg)
        return out
    if isinstance(formula, Not):
        return free_variables(formula.body)
    if isinstance(formula, (And, Or)):
        return free_variables(formula.left) | free_variables(formula.right)
    if isinstance(formula, (Forall, Exists)):
        return free_variables(formula.body) - {formula.var}
    raise TypeError(f"not a formula: {formula!r}")


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_PUNCT = (":-", "(", ")", ",", ".", "~", "&", "|", "/")
_KEYWORDS = ("true", "false", "forall", "exists")


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT VAR NUMBER PUNCT KW DIRECTIVE EOF
    text: str
    line: int
    col: int


def _lex(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch.isspace():
            advance(1)
            continue
        if ch == "%":
            while i < n and source[i] != "\n":
                advance(1)
            continue
        if ch == "#":
            start_line, start_col = line, col
            advance(1)
            j = i
            while j < n and source[j].isalpha():
                j += 1
            word = source[i:j]
            if word not in ("pred", "func", "const"):
                raise ParseError(f"unknown directive #{word}", start_line, start_col)
            advance(j - i)
            tokens.append(_Token("DIRECTIVE", word, start_line, start_col))
            continue
        matched = False
        for punct in _PUNCT:
            if source.startswith(punct, i):
                tokens.append(_Token("PUNCT", punct, line, col))
                advance(len(punct))
                matched = True
                break
        if matched:
            continue
        if ch.isdigit():
            start_line, start_col = line, col
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(_Token("NUMBER", source[i:j], start_line, start_col))
            advance(j - i)
            continue
        if ch.isalpha() or ch == "_":
            start_line, start_col = line, col
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            advance(j - i)
            if word in _KEYWORDS:
                kind = "KW"
            elif word[0] == "_" or word[0].isupper():
                kind = "VAR"
            else:
                kind = "IDENT"
            tokens.append(_Token(kind, word, start_line, start_col))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


@dataclass
class _Declarations:
    predicates: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)
    constants: list[str] = field(default_factory=list)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str) -> ParseError:
        token = self.peek()
        return ParseError(message, token.line, token.col)

    def expect(self, kind: str, text: str | None = None) -> _Token:
        token = self.peek()
        if token.kind != kind or (text is not None and token.text != text):
            want = text if text is not None else kind.lower()
            got = token.text if token.text else "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.next()

    def at_punct(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "PUNCT" and token.text == text

    # ---- program -----------------------------------------------------

    def parse_program(self) -> tuple[list[Rule], _Declarations]:
        rules: list[Rule] = []
        decls = _Declarations()
        while self.peek().kind != "EOF":
            if self.peek().kind == "DIRECTIVE":
                self.parse_directive(decls)
            else:
                rules.append(self.parse_rule())
        return rules, decls

    def parse_directive(self, decls: _Declarations) -> None:
        kind = self.next().text
        name = self.expect("IDENT").text
        if kind == "const":
            if name not in decls.constants:
                decls.constants.append(name)
        else:
            self.expect("PUNCT", "/")
            arity = int(self.expect("NUMBER").text)
            table = decls.predicates if kind == "pred" else decls.functions
            if table.get(name, arity) != arity:
                raise self.error(f"{name} declared with two arities")
            table[name] = arity
        self.expect("PUNCT", ".")

    def parse_rule(self) -> Rule:
        token = self.peek()
        if token.kind == "KW" and token.text in ("true", "false"):
            raise self.error(f"rule head must be a predicate atom, not {token.text!r}")
        head = self.parse_atom()
        if self.at_punct(":-"):
            self.next()
            body: Formula = self.parse_formula()
        else:
            body = Top()
        self.expect("PUNCT", ".")
        return Rule(head, body)

    # ---- formulas ----------------------------------------------------

    def parse_formula(self) -> Formula:
        return self.parse_or()

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.at_punct("|"):
            self.next()
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.at_punct("&"):
            self.next()
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        if self.at_punct("~"):
            self.next()
            return Not(self.parse_unary())
        token = self.peek()
        if token.kind == "KW" and token.text in ("forall", "exists"):
            self.next()
            names = [self.expect("VAR").text]
            while self.at_punct(","):
                self.next()
                names.append(self.expect("VAR").text)
            self.expect("PUNCT", ".")
            body = self.parse_formula()  # extends maximally right
            ctor = Forall if token.text == "forall" else Exists
            for name in reversed(names):
                body = ctor(name, body)
            return body
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        token = self.peek()
        if token.kind == "KW" and token.text == "true":
            self.next()
            return Top()
        if token.kind == "KW" and token.text == "false":
            self.next()
            return Bottom()
        if self.at_punct("("):
            self.next()
            inner = self.parse_formula()
            self.expect("PUNCT", ")")
            return inner
        return self.parse_atom()

    def parse_atom(self) -> Atom:
        token = self.peek()
        if token.kind != "IDENT":
            got = token.text if token.text else "end of input"
            raise self.error(f"expected an atom, found {got!r}")
        name = self.next().text
        args: tuple[Term, ...] = ()
        if self.at_punct("("):
            self.next()
            terms = [self.parse_term()]
            while self.at_punct(","):
                self.next()
                terms.append(self.parse_term())
            self.expect("PUNCT", ")")
            args = tuple(terms)
        return Atom(name, args)

    def parse_term(self) -> Term:
        token = self.peek()
        if token.kind == "VAR":
            return Var(self.next().text)
        if token.kind == "NUMBER":
            raise self.error("numbers are not terms; use named constants")
        if token.kind != "IDENT":
            got = token.text if token.text else "end of input"
            raise self.error(f"expected a term, found {got!r}")
        name = self.next().text
        if self.at_punct("("):
            self.next()
            args = [self.parse_term()]
            while self.at_punct(","):
                self.next()
                args.append(self.parse_term())
            self.expect("PUNCT", ")")
            return Func(name, tuple(args))
        return Const(name)


# ---------------------------------------------------------------------------
# Signature inference
# ---------------------------------------------------------------------------


def _collect_term(term: Term, funcs: dict[str, int], consts: set[str]) -> None:
    if isinstance(term, Const):
        consts.add(term.name)
    elif isinstance(term, Func):
        seen = funcs.get(term.name)
        if seen is not None and seen != len(term.args):
            raise SignatureError(
                f"function {term.name} used with arities {seen} and {len(term.args)}"
            )
        funcs[term.name] = len(term.args)
        for arg in term.args:
            _collect_term(arg, funcs, consts)


def _collect_formula(
    formula: Formula, preds: dict[str, int], funcs: dict[str, int], consts: set[str]
) -> None:
    if isinstance(formula, (Top, Bottom)):
        return
    if isinstance(formula, Atom):
        seen = preds.get(formula.pred)
        if seen is not None and seen != len(formula.args):
            raise SignatureError(
                f"predicate {formula.pred} used with arities {seen} and {len(formula.args)}"
            )
        preds[formula.pred] = len(formula.args)
        for arg in formula.args:
            _collect_term(arg, funcs, consts)
        return
    if isinstance(formula, Not):
        _collect_formula(formula.body, preds, funcs, consts)
        return
    if isinstance(formula, (And, Or)):
        _collect_formula(formula.left, preds, funcs, consts)
        _collect_formula(formula.right, preds, funcs, consts)
        return
    if isinstance(formula, (Forall, Exists)):
        _collect_formula(formula.body, preds, funcs, consts)
        return
    raise TypeError(f"not a formula: {formula!r}")


def _default_constant(taken: set[str]) -> str:
    if "c" not in taken:
        return "c"
    k = 0
    while f"c{k}" in taken:
        k += 1
    return f"c{k}"


def _occurring_symbols(rules, declarations: _Declarations | None = None):
    decls = declarations or _Declarations()
    preds = dict(decls.predicates)
    funcs = dict(decls.functions)
    consts = set(decls.constants)
    for rule in rules:
        _collect_formula(rule.head, preds, funcs, consts)
        _collect_formula(rule.body, preds, funcs, consts)
    clashes = set(funcs) & consts
    if clashes:
        name = sorted(clashes)[0]
        raise SignatureError(f"{name} is used both as a function and as a constant")
    return preds, funcs, consts


def infer_signature(rules, declarations: _Declarations | None = None) -> Signature:
    """Collect the signature from symbol use, honouring declarations."""
    preds, funcs, consts = _occurring_symbols(rules, declarations)
    if not consts:
        consts.add(_default_constant(set(funcs) | set(preds)))
    return Signature(
        predicates=tuple(sorted(preds.items())),
        functions=tuple(sorted(funcs.items())),
        constants=tuple(sorted(consts)),
    )


def program_from_rules(rules) -> Program:
    """Build a program, inferring its signature from the rules."""
    rules = tuple(rules)
    return Program(infer_signature(rules), rules)


def parse_program(source: str) -> Program:
    rules, decls = _Parser(_lex(source)).parse_program()
    return Program(infer_signature(rules, decls), tuple(rules))


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

_PREC_OR = 1
_PREC_AND = 2
_PREC_UNARY = 3


def render_term(term: Term) -> str:
    if isinstance(term, (Const, Var)):
        return term.name
    if isinstance(term, Func):
        return f"{term.name}({', '.join(render_term(a) for a in term.args)})"
    raise TypeError(f"not a term: {term!r}")


def render_atom(atom: Atom) -> str:
    if not atom.args:
        return atom.pred
    return f"{atom.pred}({', '.join(render_term(a) for a in atom.args)})"


def _render(formula: Formula, context: int) -> str:
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Bottom):
        return "false"
    if isinstance(formula, Atom):
        return render_atom(formula)
    if isinstance(formula, Not):
        return "~" + _render(formula.body, _PREC_UNARY)
    if isinstance(formula, (And, Or)):
        op = " & " if isinstance(formula, And) else " | "
        prec = _PREC_AND if isinstance(formula, And) else _PREC_OR
        # left-associative: the right child needs one level more
        text = _render(formula.left, prec) + op + _render(formula.right, prec + 1)
        return f"({text})" if context > prec else text
    if isinstance(formula, (Forall, Exists)):
        kind = Forall if isinstance(formula, Forall) else Exists
        word = "forall" if isinstance(formula, Forall) else "exists"
        names = [formula.var]
        body = formula.body
        while isinstance(body, kind):
            names.append(body.var)
            body = body.body
        text = f"{word} {', '.join(names)}. {_render(body, 0)}"
        # the body runs right as far as it can, so any enclosing
        # operator needs the parentheses
        return f"({text})" if context > 0 else text
    raise TypeError(f"not a formula: {formula!r}")


def render_formula(formula: Formula) -> str:
    return _render(formula, 0)


def render_rule(rule: Rule) -> str:
    head = render_atom(rule.head)
    if isinstance(rule.body, Top):
        return f"{head}."
    return f"{head} :- {render_formula(rule.body)}."


def render_program(program: Program) -> str:
    """Source text that parses back to a structurally identical program.

    Declaration headers are emitted only for symbols that plain
    inference from the rules would not recover.
    """
    seen_preds, seen_funcs, seen_consts = _occurring_symbols(program.rules)
    lines: list[str] = []
    for name, arity in program.signature.predicates:
        if seen_preds.get(name) != arity:
            lines.append(f"#pred {name}/{arity}.")
    for name, arity in program.signature.functions:
        if seen_funcs.get(name) != arity:
            lines.append(f"#func {name}/{arity}.")
    for name in program.signature.constants:
        if name not in seen_consts:
            lines.append(f"#const {name}.")
    for rule in program.rules:
        lines.append(render_rule(rule))
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# The staircase program family
# ---------------------------------------------------------------------------


def make_pn_program(n: int) -> Program:
    """The n-ary staircase family over one unary function.

    For n >= 1 the program has n+1 rules over an n-ary predicate g, a
    propositional h, a unary function f and a constant c:

        g(X1, ..., f(Xn))            :- ~~g(X1, ..., Xn).
        g(X1, ..., f(Xk), c, .., c)  :- exists X(k+1..n). g(X1, ..., Xn).
        h                            :- exists X(1..n). g(X1, ..., Xn).

    Its least model climbs through rapidly growing false degrees, which
    is what makes it a good stress fixture for the level ladder.
    """
    if n < 1:
        raise ValueError("the family is defined for n >= 1")
    xs = [Var(f"X{i}") for i in range(1, n + 1)]
    g_all = Atom("g", tuple(xs))
    rules = [
        Rule(
            Atom("g", tuple(xs[:-1]) + (Func("f", (xs[-1],)),)),
            Not(Not(g_all)),
        )
    ]
    for k in range(1, n):
        head_args = tuple(xs[: k - 1]) + (Func("f", (xs[k - 1],)),) + (Const("c"),) * (n - k)
        body: Formula = g_all
        for var in reversed(xs[k:]):
            body = Exists(var.name, body)
        rules.append(Rule(Atom("g", head_args), body))
    body = g_all
    for var in reversed(xs):
        body = Exists(var.name, body)
    rules.append(Rule(Atom("h"), body))
    return program_from_rules(rules)
