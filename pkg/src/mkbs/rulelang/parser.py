"""Parser for the knowledge-base language.

Statement forms, one per ` . `-terminated statement, `%` starting a line comment:

    rule ID : if PREMISE then ATTR = VALUE cf NUMBER .
    askable ATTR prompt "..." [ menu ( VALUE , VALUE , ... ) ] .
    goal ATTR .
    net RELATION ( SUBJECT , OBJECT ) .

Premises combine attribute-value tests with `and` / `or`; `and` binds tighter,
parentheses override. Parsing is deterministic: the same source bytes always
produce the same knowledge base or the same diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    ERROR,
    KEYWORDS,
    AVPair,
    Askable,
    Diagnostic,
    KbSemanticError,
    KbSyntaxError,
    KnowledgeBase,
    Loc,
    Premise,
    Rule,
    Triple,
    Value,
    is_valid_cf,
)
from .validate import validate_kb

# Token types
_IDENT = "ident"
_KEYWORD = "keyword"
_NUMBER = "number"
_STRING = "string"
_PUNCT = "punct"
_EOF = "eof"

_PUNCT_CHARS = {".", ":", "=", "(", ")", ","}


@dataclass(frozen=True, slots=True)
class _Token:
    type: str
    text: str
    value: Value | None
    loc: Loc


def _err(code: str, message: str, loc: Loc | None) -> Diagnostic:
    return Diagnostic(ERROR, code, message, loc)


def tokenize(source: str) -> list[_Token]:
    """Split source into tokens; raises KbSyntaxError on lexical problems."""
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        loc = Loc(line, col)
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT_CHARS:
            tokens.append(_Token(_PUNCT, ch, None, loc))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            chars: list[str] = []
            while j < n:
                c = source[j]
                if c == "\\":
                    if j + 1 >= n or source[j + 1] not in ('"', "\\"):
                        raise KbSyntaxError(
                            [_err("BAD_ESCAPE", "unknown escape in string", Loc(line, col + j - i))]
                        )
                    chars.append(source[j + 1])
                    j += 2
                    continue
                if c == '"':
                    break
                if c == "\n":
                    raise KbSyntaxError([_err("UNTERMINATED_STRING", "string not closed before end of line", loc)])
                chars.append(c)
                j += 1
            else:
                raise KbSyntaxError([_err("UNTERMINATED_STRING", "string not closed", loc)])
            text = source[i : j + 1]
            tokens.append(_Token(_STRING, text, "".join(chars), loc))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
                text = source[i:j]
                tokens.append(_Token(_NUMBER, text, float(text), loc))
            else:
                text = source[i:j]
                tokens.append(_Token(_NUMBER, text, int(text), loc))
            col += j - i
            i = j
            continue
        if "a" <= ch <= "z":
            j = i
            while j < n and (source[j].islower() or source[j].isdigit() or source[j] == "_"):
                j += 1
            text = source[i:j]
            kind = _KEYWORD if text in KEYWORDS else _IDENT
            tokens.append(_Token(kind, text, text, loc))
            col += j - i
            i = j
            continue
        raise KbSyntaxError([_err("BAD_CHAR", f"unexpected character {ch!r}", loc)])
    tokens.append(_Token(_EOF, "", None, Loc(line, col)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.semantic: list[Diagnostic] = []

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.type != _EOF:
            self.pos += 1
        return tok

    def fail(self, code: str, message: str, loc: Loc | None = None) -> KbSyntaxError:
        tok = self.peek()
        return KbSyntaxError([_err(code, message, loc or tok.loc)])

    def expect_punct(self, ch: str) -> _Token:
        tok = self.peek()
        if tok.type != _PUNCT or tok.text != ch:
            raise self.fail("SYNTAX", f"expected {ch!r}, found {tok.text or 'end of input'!r}")
        return self.next()

    def expect_keyword(self, word: str) -> _Token:
        tok = self.peek()
        if tok.type != _KEYWORD or tok.text != word:
            raise self.fail("SYNTAX", f"expected {word!r}, found {tok.text or 'end of input'!r}")
        return self.next()

    def expect_ident(self, what: str) -> _Token:
        tok = self.peek()
        if tok.type != _IDENT:
            raise self.fail("SYNTAX", f"expected {what}, found {tok.text or 'end of input'!r}")
        return self.next()

    def parse_kb(self) -> KnowledgeBase:
        rules: list[Rule] = []
        askables: dict[str, Askable] = {}
        goals: list[str] = []
        triples: list[Triple] = []
        while self.peek().type != _EOF:
            tok = self.peek()
            if tok.type != _KEYWORD:
                raise self.fail("SYNTAX", f"expected a statement, found {tok.text!r}")
            if tok.text == "rule":
                rules.append(self.parse_rule())
            elif tok.text == "askable":
                askable = self.parse_askable()
                if askable.attribute in askables:
                    self.semantic.append(
                        _err(
                            "DUPLICATE_ASKABLE",
                            f"askable {askable.attribute!r} already declared",
                            askable.loc,
                        )
                    )
                else:
                    askables[askable.attribute] = askable
            elif tok.text == "goal":
                self.next()
                attr = self.expect_ident("goal attribute")
                self.expect_punct(".")
                goals.append(attr.text)
            elif tok.text == "net":
                triples.append(self.parse_net())
            else:
                raise self.fail("SYNTAX", f"unexpected keyword {tok.text!r} at statement start")
        return KnowledgeBase(
            rules=tuple(rules), askables=askables, goals=tuple(goals), triples=tuple(triples)
        )

    def parse_rule(self) -> Rule:
        start = self.expect_keyword("rule")
        id_tok = self.expect_ident("rule id")
        self.expect_punct(":")
        self.expect_keyword("if")
        premise = self.parse_or()
        self.expect_keyword("then")
        conclusion = self.parse_avpair()
        self.expect_keyword("cf")
        cf_tok = self.peek()
        if cf_tok.type != _NUMBER:
            raise self.fail("SYNTAX", f"expected a certainty factor, found {cf_tok.text!r}")
        self.next()
        cf = float(cf_tok.value)  # type: ignore[arg-type]
        if not is_valid_cf(cf):
            self.semantic.append(
                _err("CF_RANGE", f"certainty factor {cf_tok.text} outside [0, 1]", cf_tok.loc)
            )
            cf = min(max(cf, 0.0), 1.0)
        self.expect_punct(".")
        return Rule(id=id_tok.text, premise=premise, conclusion=conclusion, cf=cf, loc=start.loc)

    def parse_or(self) -> Premise:
        children = [self.parse_and()]
        while self.peek().type == _KEYWORD and self.peek().text == "or":
            self.next()
            children.append(self.parse_and())
        return Premise.any_of(children)

    def parse_and(self) -> Premise:
        children = [self.parse_primary()]
        while self.peek().type == _KEYWORD and self.peek().text == "and":
            self.next()
            children.append(self.parse_primary())
        return Premise.all_of(children)

    def parse_primary(self) -> Premise:
        tok = self.peek()
        if tok.type == _PUNCT and tok.text == "(":
            self.next()
            inner = self.parse_or()
            self.expect_punct(")")
            return inner
        return Premise.of_test(self.parse_avpair())

    def parse_avpair(self) -> AVPair:
        attr = self.expect_ident("attribute")
        self.expect_punct("=")
        return AVPair(attr.text, self.parse_value())

    def parse_value(self) -> Value:
        tok = self.peek()
        if tok.type in (_IDENT, _STRING, _NUMBER):
            self.next()
            assert tok.value is not None
            return tok.value
        raise self.fail("SYNTAX", f"expected a value, found {tok.text or 'end of input'!r}")

    def parse_askable(self) -> Askable:
        start = self.expect_keyword("askable")
        attr = self.expect_ident("askable attribute")
        self.expect_keyword("prompt")
        prompt_tok = self.peek()
        if prompt_tok.type != _STRING:
            raise self.fail("SYNTAX", "askable prompt must be a quoted string")
        self.next()
        menu: tuple[Value, ...] | None = None
        if self.peek().type == _KEYWORD and self.peek().text == "menu":
            self.next()
            self.expect_punct("(")
            values = [self.parse_value()]
            while self.peek().type == _PUNCT and self.peek().text == ",":
                self.next()
                values.append(self.parse_value())
            self.expect_punct(")")
            menu = tuple(values)
        self.expect_punct(".")
        return Askable(
            attribute=attr.text, prompt=str(prompt_tok.value), menu=menu, loc=start.loc
        )

    def parse_net(self) -> Triple:
        start = self.expect_keyword("net")
        rel = self.expect_ident("relation")
        self.expect_punct("(")
        subj = self.expect_ident("subject")
        self.expect_punct(",")
        obj = self.expect_ident("object")
        self.expect_punct(")")
        self.expect_punct(".")
        return Triple(relation=rel.text, subject=subj.text, object=obj.text, loc=start.loc)


def parse_kb(source: str) -> KnowledgeBase:
    """Parse KB source text.

    Raises KbSyntaxError when the text cannot be read (lexical or grammar
    violation) and KbSemanticError when it parses but validation finds errors
    (CF out of range, duplicate rule ids, dependency cycles, ...). Warnings do
    not block loading; fetch them with validate_kb.
    """
    parser = _Parser(tokenize(source))
    kb = parser.parse_kb()
    errors = parser.semantic + [d for d in validate_kb(kb) if d.severity == ERROR]
    if errors:
        errors.sort(key=_diag_key)
        raise KbSemanticError(_dedupe(errors))
    return kb


def _diag_key(d: Diagnostic) -> tuple:
    loc = d.loc or Loc(0, 0)
    return (loc.line, loc.col, d.code, d.message)


def _dedupe(diags: list[Diagnostic]) -> list[Diagnostic]:
    seen = set()
    out = []
    for d in diags:
        key = (d.severity, d.code, d.message, d.loc)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out
