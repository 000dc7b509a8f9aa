"""Line-oriented text format for rewrite systems, plus term/type printers.

Grammar ('#' starts a comment):

    sort   NAME+
    symbol NAME : TYPE [status (lex-lr|lex-rl|mul)]
    var    NAME : TYPE
    prec   NAME (>|~) NAME
    rule   TERM -> TERM

    TYPE := NAME | TYPE '->' TYPE (right associative) | '(' TYPE ')'
    TERM := NAME | TERM TERM (left associative) | '(' TERM ')'
          | '\\' NAME ':' TYPE '.' TERM (the body extends maximally right)

NAME is one or more of [A-Za-z0-9_']."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Optional

from .order import Status, validate_precedence
from .rewriting import Rule, SymbolDecl, Trs
from .terms import App, Lam, Sym, Term, Var, typeof
from .types import Arrow, Base, SimpleType


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class TrsParseError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


_TOKEN_RE = re.compile(r"->|[A-Za-z0-9_']+|[()\\:.>~]")
_STATUS_WORDS = {"lex-lr": Status.LEX_LR, "lex-rl": Status.LEX_RL, "mul": Status.MUL}


@dataclass(frozen=True)
class _Tok:
    text: str
    col: int


def _lex(line: str, lineno: int, diags: list[Diagnostic]) -> list[_Tok]:
    if "#" in line:
        line = line[: line.index("#")]
    toks = []
    pos = 0
    for m in _TOKEN_RE.finditer(line):
        gap = line[pos : m.start()]
        if gap.strip():
            diags.append(Diagnostic(lineno, pos + 1, f"unexpected characters: {gap.strip()!r}"))
        toks.append(_Tok(m.group(), m.start() + 1))
        pos = m.end()
    if line[pos:].strip():
        diags.append(Diagnostic(lineno, pos + 1, f"unexpected characters: {line[pos:].strip()!r}"))
    return toks


_NAME_RE = re.compile(r"[A-Za-z0-9_']+\Z")


class _LineParser:
    def __init__(self, toks: list[_Tok], lineno: int, diags: list[Diagnostic]):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.diags = diags

    def error(self, message: str):
        col = self.toks[self.i].col if self.i < len(self.toks) else (
            self.toks[-1].col + len(self.toks[-1].text) if self.toks else 1
        )
        self.diags.append(Diagnostic(self.lineno, col, message))
        raise _Bail()

    def peek(self) -> Optional[str]:
        return self.toks[self.i].text if self.i < len(self.toks) else None

    def take(self) -> str:
        if self.i >= len(self.toks):
            self.error("unexpected end of line")
        t = self.toks[self.i].text
        self.i += 1
        return t

    def expect(self, text: str):
        got = self.peek()
        if got != text:
            self.error(f"expected {text!r}, found {got!r}" if got else f"expected {text!r}")
        self.i += 1

    def name(self, what: str) -> str:
        got = self.peek()
        if got is None or not _NAME_RE.match(got):
            self.error(f"expected {what}")
        self.i += 1
        return got

    def at_end(self) -> bool:
        return self.i >= len(self.toks)

    def expect_end(self):
        if not self.at_end():
            self.error(f"trailing input: {self.peek()!r}")

    # types

    def type_(self, sorts: set[str]) -> SimpleType:
        left = self.type_atom(sorts)
        if self.peek() == "->":
            self.i += 1
            return Arrow(left, self.type_(sorts))
        return left

    def type_atom(self, sorts: set[str]) -> SimpleType:
        if self.peek() == "(":
            self.i += 1
            ty = self.type_(sorts)
            self.expect(")")
            return ty
        n = self.name("a sort name")
        if n not in sorts:
            self.error(f"undeclared sort: {n}")
        return Base(n)

    # terms

    def term(self, ctx: "_TermCtx", bound: dict[str, Var]) -> Term:
        t = self.term_atom(ctx, bound)
        while self.peek() in ("(", "\\") or (
            self.peek() is not None and _NAME_RE.match(self.peek())  # type: ignore[arg-type]
        ):
            t = App(t, self.term_atom(ctx, bound))
        return t

    def term_atom(self, ctx: "_TermCtx", bound: dict[str, Var]) -> Term:
        tok = self.peek()
        if tok == "(":
            self.i += 1
            t = self.term(ctx, bound)
            self.expect(")")
            return t
        if tok == "\\":
            self.i += 1
            n = self.name("a bound variable name")
            self.expect(":")
            ty = self.type_(ctx.sorts)
            self.expect(".")
            x = Var(n, ty)
            inner = dict(bound)
            inner[n] = x
            return Lam(x, self.term(ctx, inner))
        n = self.name("a term")
        if n in bound:
            return bound[n]
        if n in ctx.var_types:
            return Var(n, ctx.var_types[n])
        if n in ctx.signature:
            return Sym(n, ctx.signature[n])
        self.error(f"undeclared name: {n}")
        raise AssertionError


class _Bail(Exception):
    pass


@dataclass
class _TermCtx:
    sorts: set[str]
    signature: dict[str, SimpleType]
    var_types: dict[str, SimpleType]


def parse_term(
    source: str,
    signature: Mapping[str, SimpleType],
    var_types: Mapping[str, SimpleType] = (),
) -> Term:
    """Parse a single term against a signature and free-variable typing."""
    diags: list[Diagnostic] = []
    toks = _lex(source, 1, diags)
    sorts = set()
    for ty in list(signature.values()) + list(dict(var_types).values()):
        sorts |= {b.name for b in _base_sorts(ty)}
    ctx = _TermCtx(sorts, dict(signature), dict(var_types))
    p = _LineParser(toks, 1, diags)
    try:
        if p.at_end():
            p.error("empty term")
        t = p.term(ctx, {})
        p.expect_end()
        typeof(t)
    except _Bail:
        raise TrsParseError(diags) from None
    except TypeError as e:
        diags.append(Diagnostic(1, 1, f"ill-typed term: {e}"))
        raise TrsParseError(diags) from None
    if diags:
        raise TrsParseError(diags)
    return t


def _base_sorts(ty: SimpleType) -> list[Base]:
    match ty:
        case Base():
            return [ty]
        case Arrow(left=l, right=r):
            return _base_sorts(l) + _base_sorts(r)
    return []


def parse_type(source: str, sorts: set[str]) -> SimpleType:
    """Parse a type against a set of declared sort names."""
    diags: list[Diagnostic] = []
    toks = _lex(source, 1, diags)
    p = _LineParser(toks, 1, diags)
    try:
        ty = p.type_(sorts)
        p.expect_end()
    except _Bail:
        raise TrsParseError(diags) from None
    if diags:
        raise TrsParseError(diags)
    return ty


def parse_trs(source: str) -> Trs:
    """Parse a full system; raises TrsParseError with positioned diagnostics."""
    diags: list[Diagnostic] = []
    sorts: list[str] = []
    symbols: list[SymbolDecl] = []
    variables: list[Var] = []
    prec_decls: list[tuple[str, str, str]] = []
    rule_srcs: list[tuple[int, list[_Tok]]] = []

    for lineno, raw in enumerate(source.splitlines(), 1):
        status: Optional[Status] = None
        line = raw
        if "#" in line:
            line = line[: line.index("#")]
        stripped = line.strip()
        if not stripped:
            continue
        head = stripped.split()[0]
        if head == "symbol":
            parts = line.rstrip().rsplit(" status ", 1)
            if len(parts) == 2 and parts[1].strip() in _STATUS_WORDS:
                status = _STATUS_WORDS[parts[1].strip()]
                line = parts[0]
        toks = _lex(line, lineno, diags)
        if not toks:
            continue
        p = _LineParser(toks, lineno, diags)
        try:
            kind = p.take()
            if kind == "sort":
                names = []
                while not p.at_end():
                    names.append(p.name("a sort name"))
                if not names:
                    p.error("expected at least one sort name")
                for n in names:
                    if n in sorts:
                        p.diags.append(Diagnostic(lineno, 1, f"duplicate sort: {n}"))
                    else:
                        sorts.append(n)
            elif kind == "symbol":
                n = p.name("a symbol name")
                p.expect(":")
                ty = p.type_(set(sorts))
                p.expect_end()
                if any(d.name == n for d in symbols):
                    p.diags.append(Diagnostic(lineno, 1, f"duplicate symbol: {n}"))
                else:
                    symbols.append(SymbolDecl(n, ty, status))
            elif kind == "var":
                n = p.name("a variable name")
                p.expect(":")
                ty = p.type_(set(sorts))
                p.expect_end()
                if any(v.name == n for v in variables) or any(d.name == n for d in symbols):
                    p.diags.append(Diagnostic(lineno, 1, f"duplicate declaration: {n}"))
                else:
                    variables.append(Var(n, ty))
            elif kind == "prec":
                a = p.name("a symbol name")
                op = p.take()
                if op not in (">", "~"):
                    p.error(f"expected '>' or '~', found {op!r}")
                b = p.name("a symbol name")
                p.expect_end()
                for s in (a, b):
                    if not any(d.name == s for d in symbols):
                        p.diags.append(Diagnostic(lineno, 1, f"undeclared symbol in precedence: {s}"))
                prec_decls.append((a, op, b))
            elif kind == "rule":
                rule_srcs.append((lineno, toks[1:]))
            else:
                p.error(f"unknown declaration: {kind!r}")
        except _Bail:
            continue

    signature = {d.name: d.ty for d in symbols}
    var_types = {v.name: v.ty for v in variables}
    ctx = _TermCtx(set(sorts), signature, var_types)
    rules: list[Rule] = []
    for lineno, toks in rule_srcs:
        p = _LineParser(toks, lineno, diags)
        try:
            lhs = p.term(ctx, {})
            p.expect("->")
            rhs = p.term(ctx, {})
            p.expect_end()
        except _Bail:
            continue
        try:
            typeof(lhs)
            typeof(rhs)
            rules.append(Rule(lhs, rhs))
        except (TypeError, ValueError) as e:
            diags.append(Diagnostic(lineno, 1, str(e)))

    if not diags:
        # precedence declarations only make sense over the declared symbols
        candidate = Trs(
            sorts=tuple(sorts),
            symbols=tuple(symbols),
            variables=tuple(variables),
            prec_decls=tuple(p for p in prec_decls),
            rules=tuple(rules),
        )
        for message in validate_precedence(candidate.precedence, candidate.statuses):
            diags.append(Diagnostic(0, 0, message))
        if not diags:
            return candidate
    raise TrsParseError(diags)


def format_type(ty: SimpleType) -> str:
    return str(ty)


def format_term(t: Term) -> str:
    return repr(t)


def format_trs(trs: Trs) -> str:
    lines = []
    if trs.sorts:
        lines.append("sort " + " ".join(trs.sorts))
    for d in trs.symbols:
        suffix = f" status {d.status.value}" if d.status is not None else ""
        lines.append(f"symbol {d.name} : {d.ty}{suffix}")
    for v in trs.variables:
        lines.append(f"var {v.name} : {v.ty}")
    for a, op, b in trs.prec_decls:
        lines.append(f"prec {a} {op} {b}")
    for r in trs.rules:
        lines.append(f"rule {format_term(r.lhs)} -> {format_term(r.rhs)}")
    return "\n".join(lines) + "\n"
