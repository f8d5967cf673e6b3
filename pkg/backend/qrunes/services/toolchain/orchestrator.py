"""
Toolchain orchestrator - check, compile and run pipelines.

Coordinates lexing, parsing, semantic analysis, elaboration, code
generation and simulation. The CLI and the language server both go
through ``Toolchain.check_source`` so they report identical diagnostics.
"""

import time
from dataclasses import dataclass, field
from typing import Any

from qrunes.core import CompilationFailedError, logger
from qrunes.schemas.profile import TargetProfile
from qrunes.schemas.results import SimulationReport
from qrunes.schemas.run_config import RunConfig
from qrunes.services.codegen import (
    TargetSourceText,
    codegen,
    get_profile,
    profile_for_language,
)
from qrunes.services.frontend import LineIndex, SourceSpan, parse_source
from qrunes.services.qir import ElabLimits, QProgIR, elaborate_entry, ir_to_text
from qrunes.services.semantics import (
    Diagnostic,
    TypedAst,
    analyze,
    has_errors,
    sort_diagnostics,
)
from qrunes.services.simulator import run_shots

QIR_TARGET = "qir"
DEFAULT_TARGET = "cpp"

# Stand-in location for errors that carry no span
START_SPAN = SourceSpan(0, 0, 1, 1, 1, 1)


@dataclass
class CheckResult:
    """Outcome of the front half of the pipeline for one source text."""

    source: str
    typed: TypedAst | None
    diagnostics: list[Diagnostic] = field(default_factory=list)
    duration_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.typed is not None and not has_errors(self.diagnostics)

    @property
    def line_index(self) -> LineIndex:
        return LineIndex(self.source)

    def records(self) -> list[dict[str, Any]]:
        """Diagnostics as JSON-ready records."""
        return [d.to_record().model_dump(mode="json") for d in self.diagnostics]

    def require_ok(self) -> TypedAst:
        """
        The typed program, or an exception listing the diagnostics.

        Raises:
            CompilationFailedError: Any error-severity diagnostic
        """
        if not self.ok or self.typed is None:
            raise CompilationFailedError(self.records())
        return self.typed


class Toolchain:
    """
    Orchestrates the QRunes pipeline.

    Pipeline stages:
    1. Lexing and parsing (error recovery collects every syntax error)
    2. Semantic analysis
    3. Either code generation for a target profile,
       or elaboration to IR followed by shot simulation
    """

    def __init__(self, limits: ElabLimits | None = None, workers: int | None = None):
        """
        Initialize the toolchain.

        Args:
            limits: Elaboration limits (defaults come from settings)
            workers: Simulator thread count (defaults come from settings)
        """
        self._limits = limits
        self._workers = workers

    # ===========================================
    # Check
    # ===========================================

    def check_source(self, source: str, name: str = "<input>") -> CheckResult:
        """
        Parse and analyze one source text.

        Args:
            source: QRunes program text
            name: Display name for logging

        Returns:
            CheckResult with sorted diagnostics; ``typed`` is None when
            the text did not parse
        """
        start_time = time.time()
        logger.step(1, 2, f"Parsing {name}")
        parsed = parse_source(source)
        if not parsed.ok:
            diagnostics = [
                Diagnostic.from_error(e, START_SPAN) for e in parsed.all_errors
            ]
            typed = None
        else:
            logger.step(2, 2, f"Analyzing {name}")
            typed, diagnostics = analyze(parsed.ast)
        elapsed_ms = (time.time() - start_time) * 1000
        result = CheckResult(source, typed, sort_diagnostics(diagnostics), elapsed_ms)
        logger.debug(
            f"Checked {name}: {len(result.diagnostics)} diagnostic(s), "
            f"{elapsed_ms:.1f}ms"
        )
        return result

    # ===========================================
    # Compile
    # ===========================================

    def select_profile(self, program: TypedAst, target: str | None) -> TargetProfile:
        """
        Pick the target profile.

        The ``language`` setting decides when no target is given; an
        explicit target wins over a conflicting setting with a warning.
        """
        language = program.ast.setting("language")
        from_setting = profile_for_language(language) if language else None
        if language and from_setting is None:
            logger.warning(f"No target profile matches language '{language}'")
        if target is None:
            return from_setting or get_profile(DEFAULT_TARGET)
        profile = get_profile(target)
        if from_setting is not None and from_setting.name != profile.name:
            logger.warning(
                f"--target {profile.name} overrides 'language = {language}' setting"
            )
        return profile

    def compile_target(
        self, check: CheckResult, target: str | None = None, stem: str = "program"
    ) -> TargetSourceText:
        """
        Generate host-language sources for a checked program.

        Raises:
            CompilationFailedError: The program has errors
            UnknownProfileError: No profile named ``target``
        """
        program = check.require_ok()
        profile = self.select_profile(program, target)
        logger.step(1, 1, f"Generating {profile.name} sources")
        return codegen(program, profile, stem)

    def elaborate(self, check: CheckResult, config: RunConfig) -> QProgIR:
        """
        Elaborate the configured entry function into IR.

        Raises:
            CompilationFailedError: The program has errors
            ElaborationError: E240-E248
        """
        program = check.require_ok()
        return elaborate_entry(program, config.entry, dict(config.args), self._limits)

    def compile_qir(
        self, check: CheckResult, config: RunConfig, stem: str = "program"
    ) -> TargetSourceText:
        """Canonical IR text of the configured entry, as one ``.qir`` file."""
        ir = self.elaborate(check, config)
        return TargetSourceText([(f"{stem}.qir", ir_to_text(ir) + "\n")])

    def compile(
        self,
        check: CheckResult,
        target: str | None = None,
        stem: str = "program",
        config: RunConfig | None = None,
    ) -> TargetSourceText:
        """Dispatch to codegen or the IR printer."""
        if target == QIR_TARGET:
            if config is None:
                raise ValueError("the qir target needs a run configuration")
            return self.compile_qir(check, config, stem)
        return self.compile_target(check, target, stem)

    # ===========================================
    # Run
    # ===========================================

    def run(self, check: CheckResult, config: RunConfig) -> SimulationReport:
        """
        Elaborate and simulate ``config.shots`` shots.

        Returns:
            SimulationReport with histogram and register statistics
        """
        start_time = time.time()
        logger.step(1, 2, f"Elaborating entry '{config.entry}'")
        ir = self.elaborate(check, config)
        logger.step(2, 2, f"Simulating {config.shots} shot(s)")
        report = run_shots(ir, config, self._workers)
        elapsed_ms = (time.time() - start_time) * 1000
        logger.success(
            f"Simulation complete ({config.shots} shots, {elapsed_ms:.0f}ms)"
        )
        return report
