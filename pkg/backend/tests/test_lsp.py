"""
Tests for the language-server features.

Covers:
- Diagnostics identical to ``qrunes check`` for every sample
- Hover text for builtins, parameters, locals and functions
- Scope-aware completion across the qif barrier
- Document versioning and the completion fallback while a file is broken
"""

import numpy as np
import pytest
from lsprotocol.types import DiagnosticSeverity, Position

from qrunes.api.lsp import (
    DIAGNOSTIC_SOURCE,
    DocumentStore,
    completion_items,
    hover_text,
    lsp_diagnostics,
    to_offset,
)
from qrunes.services.frontend import LineIndex

ALL_SAMPLES = [
    "alias",
    "bad_assign",
    "bell",
    "calls",
    "foo",
    "host",
    "if_on_cbit",
    "measureall",
    "qif",
    "scoping",
    "scoping_error",
    "test",
]

BARRIER_SOURCE = """\
@qcode:
f(qubit q, cbit c)
{
    let ac = 1;
    Measure(q, c);
    qif (c) {
        H(q);
    }
}
"""

BARRIERS = {"qif", "qwhile"}


def nested_program(rng) -> tuple[str, set[str]]:
    """
    Random if/while/qif/qwhile nesting with one assist local per level.

    Returns the source and the locals visible at the innermost ``H(q);``.
    """
    choices = rng.choice(["if", "while", "qif", "qwhile"], size=rng.integers(1, 6))
    kinds = [str(kind) for kind in choices]
    lines, closers = ["@qcode:", "f(qubit q, cbit c)", "{"], []
    for depth, kind in enumerate(kinds):
        pad = "    " * (depth + 1)
        lines.append(f"{pad}let v{depth} = {depth};")
        cond = "c" if kind in BARRIERS else f"v{depth} < 3"
        lines.append(f"{pad}{kind} ({cond}) {{")
        closers.append(f"{pad}}}")
    lines.append("    " * (len(kinds) + 1) + "H(q);")
    lines.extend(reversed(closers))
    lines.append("}")
    expected = {
        f"v{depth}"
        for depth in range(len(kinds))
        if not BARRIERS.intersection(kinds[depth:])
    }
    return "\n".join(lines) + "\n", expected


def labels(typed, offset) -> set[str]:
    return {item.label for item in completion_items(typed, offset)}


# ═══════════════════════════════════════════════════════════════════
# Diagnostics
# ═══════════════════════════════════════════════════════════════════


class TestDiagnostics:
    """Protocol diagnostics mirror the CLI records."""

    @pytest.mark.parametrize("name", ALL_SAMPLES)
    def test_same_as_check(self, check_sample, name):
        check = check_sample(name)
        published = lsp_diagnostics(check)
        records = check.records()
        assert len(published) == len(records)
        for diagnostic, record in zip(published, records):
            assert diagnostic.code == record["code"]
            assert diagnostic.message == record["message"]
            assert diagnostic.source == DIAGNOSTIC_SOURCE
            assert diagnostic.range.start.line + 1 == record["line"]
            assert diagnostic.range.start.character + 1 == record["column"]
            assert diagnostic.range.end.line + 1 == record["end_line"]
            assert diagnostic.range.end.character + 1 == record["end_column"]

    def test_severity_mapping(self, check_text):
        check = check_text(
            "@qcode:\nf(qubit a)\n{\n    if (true) { let a = 1; }\n    x = 1;\n}\n"
        )
        severities = {d.code: d.severity for d in lsp_diagnostics(check)}
        assert severities["W001"] == DiagnosticSeverity.Warning
        assert severities["E101"] == DiagnosticSeverity.Error

    def test_syntax_error_published(self, check_text):
        (diagnostic,) = lsp_diagnostics(check_text("@qcode:\nf(qubit q){ H(q) X(q); }"))
        assert diagnostic.code == "E002"
        assert diagnostic.range.start.line == 1


# ═══════════════════════════════════════════════════════════════════
# Hover
# ═══════════════════════════════════════════════════════════════════


class TestHover:
    """One-line descriptions of the name under the cursor."""

    def test_builtin_gate(self, check_sample):
        check = check_sample("bell")
        offset = check.source.index("CNOT")
        assert hover_text(check.typed, offset) == "CNOT(qubit, qubit) — builtin gate"

    def test_parameter(self, check_sample):
        check = check_sample("bell")
        offset = check.source.index("H(q[0])") + 2
        expected = "q: qvec (quantum) — parameter of Bell"
        assert hover_text(check.typed, offset) == expected

    def test_local(self, check_text):
        check = check_text(BARRIER_SOURCE)
        offset = check.source.index("ac")
        expected = "ac: int (assist-classical) — local of f, line 4"
        assert hover_text(check.typed, offset) == expected

    def test_function_call(self, check_sample):
        check = check_sample("calls")
        offset = check.source.rindex("foo(")
        assert hover_text(check.typed, offset) == "foo(int n, qvec q) — function"

    def test_whitespace_has_no_hover(self, check_sample):
        check = check_sample("bell")
        assert hover_text(check.typed, check.source.index("{") + 1) is None

    def test_unparsed_document(self):
        assert hover_text(None, 0) is None


# ═══════════════════════════════════════════════════════════════════
# Completion
# ═══════════════════════════════════════════════════════════════════


class TestCompletion:
    """Keywords, builtins and visible symbols."""

    def test_keywords_and_builtins_always_offered(self):
        names = labels(None, 0)
        assert {"qif", "qwhile", "let", "qvec", "cbit"} <= names
        assert {"H", "CNOT", "RX", "Measure", "MeasureAll"} <= names

    def test_assist_local_hidden_inside_qif(self, check_text):
        check = check_text(BARRIER_SOURCE)
        before = labels(check.typed, check.source.index("Measure"))
        inside = labels(check.typed, check.source.index("H(q)"))
        assert {"ac", "q", "c", "f"} <= before
        assert "ac" not in inside
        assert {"q", "c"} <= inside

    def test_classical_while_inside_qif(self, check_sample):
        check = check_sample("scoping")
        offset = check.source.index("H(qs[i])")
        assert {"i", "qs", "q", "c", "ac"} <= labels(check.typed, offset)
        # the qif-local ac, not the one behind the barrier
        (ac,) = [s for s in check.typed.visible_at(offset) if s.name == "ac"]
        assert ac.def_span.line == 9

    @pytest.mark.parametrize("seed", range(25))
    def test_barrier_nesting(self, check_text, seed):
        source, expected = nested_program(np.random.default_rng(seed))
        check = check_text(source)
        assert check.ok
        offset = check.source.index("H(q);")
        visible = {s.name for s in check.typed.visible_at(offset)}
        offered = labels(check.typed, offset)
        assert {n for n in visible if n.startswith("v")} == expected
        assert {n for n in offered if n.startswith("v")} == expected

    def test_later_locals_not_visible(self, check_text):
        check = check_text(BARRIER_SOURCE)
        assert "ac" not in labels(check.typed, check.source.index("let ac"))


# ═══════════════════════════════════════════════════════════════════
# Documents
# ═══════════════════════════════════════════════════════════════════


class TestDocumentStore:
    """Versioned per-URI analyses."""

    URI = "file:///work/bell.qrunes"

    @pytest.fixture
    def store(self, toolchain):
        return DocumentStore(toolchain)

    def test_update_and_close(self, store, samples_dir):
        text = (samples_dir / "bell.qrunes").read_text(encoding="utf-8")
        state = store.update(self.URI, 1, text)
        assert state.check.ok
        assert self.URI in store
        store.close(self.URI)
        assert self.URI not in store
        assert store.get(self.URI) is None

    def test_stale_version_ignored(self, store):
        store.update(self.URI, 3, "@qcode:\nf(qubit q){ H(q); }\n")
        state = store.update(self.URI, 2, "@qcode:\nf(qubit q){ X(q); }\n")
        assert state.version == 3
        assert "H(q)" in store.get(self.URI).text

    def test_last_typed_survives_lex_error(self, store):
        store.update(self.URI, 1, BARRIER_SOURCE)
        state = store.update(self.URI, 2, BARRIER_SOURCE.replace("H(q);", "H(q); $"))
        assert state.check.typed is None
        assert state.last_typed is not None
        assert "ac" in labels(state.last_typed, BARRIER_SOURCE.index("Measure"))

    def test_position_to_offset(self):
        index = LineIndex(BARRIER_SOURCE)
        offset = to_offset(index, Position(line=3, character=8))
        assert BARRIER_SOURCE[offset : offset + 2] == "ac"
