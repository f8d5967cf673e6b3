"""
Console entry point.

QRunes Toolchain - parse, check, transpile and simulate QRunes
hybrid quantum-classical programs.
"""

import sys

from qrunes.api.cli import EXIT_FAILED, emit_json, main as cli_main
from qrunes.core import logger, settings


def main(argv: list[str] | None = None) -> int:
    """
    Run the CLI; unexpected failures become a JSON error and exit code 1.

    Args:
        argv: Arguments without the program name

    Returns:
        Process exit code
    """
    try:
        return cli_main(argv)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return EXIT_FAILED
    except Exception as exc:
        logger.error(f"Unhandled exception: {exc}")
        emit_json(
            {
                "error": {
                    "code": "INTERNAL_ERROR",
                    "message": str(exc) if settings.debug else "Internal error",
                    "details": {"type": type(exc).__name__},
                }
            }
        )
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
