"""Command-line entry point."""
from __future__ import annotations

import logging
import sys
from typing import Optional, Sequence

from sullivan.cli.options import EXIT_FAIL, EXIT_UNDETERMINED
from sullivan.cli.router import build_parser
from sullivan.core.config import get_settings
from sullivan.core.errors import (
    ComputationLimitExceeded,
    EngineInconsistency,
    ModelError,
    ParseFailure,
    SullivanError,
    UnknownModel,
)

logger = logging.getLogger("sullivan")


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(getattr(args, "verbose", False))
    try:
        return args.func(args)
    except ParseFailure as exc:
        for diagnostic in exc.diagnostics.items:
            sys.stderr.write(diagnostic.render(exc.diagnostics.provenance) + "\n")
        return EXIT_FAIL
    except ComputationLimitExceeded as exc:
        sys.stderr.write(f"computation limit exceeded: {exc}\n")
        return EXIT_UNDETERMINED
    except EngineInconsistency as exc:
        sys.stderr.write(f"engine inconsistency: {exc}\n")
        if exc.dump:
            for page, cells in exc.dump.items():
                sys.stderr.write(f"  {page}: {cells}\n")
        return EXIT_FAIL
    except ModelError as exc:
        sys.stderr.write(f"invalid model: {exc}\n")
        return EXIT_FAIL
    except UnknownModel as exc:
        sys.stderr.write(f"no model file or corpus entry named {exc.args[0]!r}\n")
        return EXIT_FAIL
    except SullivanError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
