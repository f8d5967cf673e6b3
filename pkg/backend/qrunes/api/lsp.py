"""
QRunes language server.

Speaks JSON-RPC over standard input/output through pygls and serves
push diagnostics, hover and scope-aware completion. Every open document
is fully re-analyzed on each change with the same ``Toolchain`` the CLI
uses, so both report identical diagnostics.
"""

import threading
from dataclasses import dataclass

from lsprotocol.types import (
    TEXT_DOCUMENT_COMPLETION,
    TEXT_DOCUMENT_DID_CHANGE,
    TEXT_DOCUMENT_DID_CLOSE,
    TEXT_DOCUMENT_DID_OPEN,
    TEXT_DOCUMENT_HOVER,
    CompletionItem,
    CompletionItemKind,
    CompletionList,
    CompletionParams,
    Diagnostic,
    DiagnosticSeverity,
    DidChangeTextDocumentParams,
    DidCloseTextDocumentParams,
    DidOpenTextDocumentParams,
    Hover,
    HoverParams,
    MarkupContent,
    MarkupKind,
    Position,
    Range,
    TextDocumentSyncKind,
)
from pygls.server import LanguageServer

from qrunes.api.deps import get_toolchain
from qrunes.core import logger, settings
from qrunes.services.frontend import LineIndex, SourceSpan
from qrunes.services.frontend.tokens import KEYWORDS, TYPE_NAMES
from qrunes.services.semantics import BUILTINS, Severity, SymbolKind, TypedAst
from qrunes.services.semantics import Diagnostic as QDiagnostic
from qrunes.services.semantics.scope import Symbol
from qrunes.services.toolchain import CheckResult, Toolchain

DIAGNOSTIC_SOURCE = "qrunes"

_SYMBOL_KINDS = {
    SymbolKind.PARAM: CompletionItemKind.Variable,
    SymbolKind.LET: CompletionItemKind.Variable,
    SymbolKind.TOP_CONST: CompletionItemKind.Constant,
    SymbolKind.FUNCTION: CompletionItemKind.Function,
    SymbolKind.BUILTIN: CompletionItemKind.Function,
}


# ===========================================
# Document Store
# ===========================================


@dataclass
class DocumentState:
    """One open document and its latest analysis."""

    version: int
    text: str
    check: CheckResult
    # Last analysis that parsed; completion falls back to it mid-edit
    last_typed: TypedAst | None = None

    @property
    def index(self) -> LineIndex:
        return LineIndex(self.text)


class DocumentStore:
    """uri -> (version, text, analysis), updated atomically."""

    def __init__(self, toolchain: Toolchain | None = None) -> None:
        self._toolchain = toolchain or Toolchain()
        self._documents: dict[str, DocumentState] = {}
        self._lock = threading.Lock()

    def update(self, uri: str, version: int, text: str) -> DocumentState:
        """Analyze ``text`` and store it unless a newer version is already stored."""
        check = self._toolchain.check_source(text, uri)
        with self._lock:
            current = self._documents.get(uri)
            if current is not None and current.version > version:
                return current
            last_typed = check.typed or (current.last_typed if current else None)
            state = DocumentState(version, text, check, last_typed)
            self._documents[uri] = state
            return state

    def get(self, uri: str) -> DocumentState | None:
        with self._lock:
            return self._documents.get(uri)

    def close(self, uri: str) -> None:
        with self._lock:
            self._documents.pop(uri, None)

    def __contains__(self, uri: str) -> bool:
        return self.get(uri) is not None


# ===========================================
# Protocol Mapping
# ===========================================


def to_range(span: SourceSpan) -> Range:
    """1-based source span -> 0-based protocol range."""
    return Range(
        start=Position(line=span.line - 1, character=span.column - 1),
        end=Position(line=span.end_line - 1, character=span.end_column - 1),
    )


def to_offset(index: LineIndex, position: Position) -> int:
    return index.offset(position.line + 1, position.character + 1)


def to_lsp_diagnostic(diagnostic: QDiagnostic) -> Diagnostic:
    severity = (
        DiagnosticSeverity.Error
        if diagnostic.severity == Severity.ERROR
        else DiagnosticSeverity.Warning
    )
    return Diagnostic(
        range=to_range(diagnostic.span),
        message=diagnostic.message,
        severity=severity,
        code=diagnostic.code,
        source=DIAGNOSTIC_SOURCE,
    )


def lsp_diagnostics(check: CheckResult) -> list[Diagnostic]:
    return [to_lsp_diagnostic(d) for d in check.diagnostics]


# ===========================================
# Hover
# ===========================================


def symbol_hover(symbol: Symbol) -> str:
    """One-line description of a symbol."""
    if symbol.kind == SymbolKind.FUNCTION:
        return f"{symbol.signature or symbol.name} — function"
    head = symbol.name
    if symbol.sem_type is not None:
        family = symbol.sem_type.family.value
        head = f"{symbol.name}: {symbol.sem_type.describe()} ({family})"
    if symbol.kind == SymbolKind.PARAM:
        return f"{head} — parameter of {symbol.owner}"
    if symbol.kind == SymbolKind.TOP_CONST:
        return f"{head} — top-level constant"
    line = symbol.def_span.line if symbol.def_span else "?"
    return f"{head} — local of {symbol.owner}, line {line}"


def hover_text(typed: TypedAst | None, offset: int) -> str | None:
    """
    Hover text for the identifier at ``offset``.

    Args:
        typed: Analysis of the document (None when it did not parse)
        offset: Character offset of the cursor

    Returns:
        Text for a symbol or builtin occurrence, None elsewhere
    """
    if typed is None:
        return None
    reference = typed.reference_at(offset)
    if reference is None:
        return None
    if reference.builtin is not None:
        return reference.builtin.hover_text()
    if reference.symbol is not None:
        return symbol_hover(reference.symbol)
    return None


# ===========================================
# Completion
# ===========================================


def completion_items(typed: TypedAst | None, offset: int) -> list[CompletionItem]:
    """Keywords, builtins and the symbols visible at ``offset``."""
    items = [
        CompletionItem(label=word, kind=CompletionItemKind.Keyword)
        for word in sorted(KEYWORDS | TYPE_NAMES)
    ]
    items.extend(
        CompletionItem(
            label=builtin.name,
            kind=CompletionItemKind.Function,
            detail=builtin.signature(),
        )
        for builtin in BUILTINS.values()
    )
    if typed is None:
        return items
    for symbol in typed.visible_at(offset):
        detail = symbol.signature if symbol.kind == SymbolKind.FUNCTION else None
        if detail is None and symbol.sem_type is not None:
            detail = symbol.sem_type.describe()
        items.append(
            CompletionItem(
                label=symbol.name, kind=_SYMBOL_KINDS[symbol.kind], detail=detail
            )
        )
    return items


# ===========================================
# Server
# ===========================================


class QRunesLanguageServer(LanguageServer):
    """pygls server wired to a DocumentStore."""

    def __init__(self, store: DocumentStore | None = None) -> None:
        super().__init__(
            settings.lsp_name,
            settings.app_version,
            text_document_sync_kind=TextDocumentSyncKind.Full,
        )
        self.store = store or DocumentStore(get_toolchain())

        @self.feature(TEXT_DOCUMENT_DID_OPEN)
        def did_open(params: DidOpenTextDocumentParams) -> None:
            doc = params.text_document
            self.refresh(doc.uri, doc.version, doc.text)

        @self.feature(TEXT_DOCUMENT_DID_CHANGE)
        def did_change(params: DidChangeTextDocumentParams) -> None:
            doc = params.text_document
            text = self.workspace.get_text_document(doc.uri).source
            self.refresh(doc.uri, doc.version, text)

        @self.feature(TEXT_DOCUMENT_DID_CLOSE)
        def did_close(params: DidCloseTextDocumentParams) -> None:
            self.store.close(params.text_document.uri)
            self.publish_diagnostics(params.text_document.uri, [])

        @self.feature(TEXT_DOCUMENT_HOVER)
        def hover(params: HoverParams) -> Hover | None:
            state = self.store.get(params.text_document.uri)
            if state is None:
                return None
            offset = to_offset(state.index, params.position)
            text = hover_text(state.check.typed, offset)
            if text is None:
                return None
            return Hover(contents=MarkupContent(kind=MarkupKind.PlainText, value=text))

        @self.feature(TEXT_DOCUMENT_COMPLETION)
        def completion(params: CompletionParams) -> CompletionList:
            state = self.store.get(params.text_document.uri)
            if state is None:
                items = completion_items(None, 0)
                return CompletionList(is_incomplete=False, items=items)
            offset = to_offset(state.index, params.position)
            items = completion_items(state.check.typed or state.last_typed, offset)
            return CompletionList(is_incomplete=False, items=items)

    def refresh(self, uri: str, version: int, text: str) -> None:
        """Re-analyze one document and push its diagnostics."""
        try:
            state = self.store.update(uri, version, text)
            diagnostics = lsp_diagnostics(state.check)
        except Exception as e:
            logger.error(f"Analysis of {uri} failed: {e}")
            diagnostics = []
        self.publish_diagnostics(uri, diagnostics, version=version)


def start_server() -> None:
    """Serve over standard input/output until the client exits."""
    logger.info(f"Starting {settings.lsp_name} on stdio")
    QRunesLanguageServer().start_io()
