"""
Command-line verbs.

``cli_bp`` collects verb handlers the way an HTTP blueprint collects
routes; ``routes`` registers them on import. A handler receives the parsed
argparse namespace and returns a VerbResult; dispatch() turns it (or the
exception it raised) into output and an exit code.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..core.errors import AntirotorError, UsageError
from ..infrastructure.logs.log_setup import configure
from ..infrastructure.report.report_writer import build_report, render_json, render_text

logger = logging.getLogger(__name__)

# flags that change presentation only and stay out of the inputs digest
_PRESENTATION = {"json", "timing", "log_level", "verb", "out", "csv", "workers"}

Argument = Tuple[Tuple[str, ...], Dict[str, Any]]


@dataclass
class VerbResult:
    results: Dict[str, Any]
    algebra: Optional[str] = None
    algebra_json: Optional[Dict[str, Any]] = None
    warnings: List[str] = field(default_factory=list)
    failed: bool = False
    text: Optional[str] = None


@dataclass
class _Verb:
    handler: Callable[[argparse.Namespace], VerbResult]
    help: str
    arguments: Sequence[Argument]


def arg(*flags: str, **kwargs: Any) -> Argument:
    return flags, kwargs


class VerbBlueprint:
    def __init__(self, name: str) -> None:
        self.name = name
        self._verbs: Dict[str, _Verb] = {}

    def verb(self, name: str, help: str = "", arguments: Sequence[Argument] = ()):
        def decorator(fn):
            self._verbs[name] = _Verb(fn, help, arguments)
            return fn

        return decorator

    @property
    def verbs(self) -> List[str]:
        return list(self._verbs)

    def parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--json", action="store_true", help="machine-readable output")
        common.add_argument("--timing", action="store_true", help="include wall time")
        common.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
        common.add_argument("--seed", type=int, default=None, help="random seed")
        common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")

        parser = argparse.ArgumentParser(
            prog="antirotor", description="Anti-rotors, invariants and unital norms of algebras."
        )
        sub = parser.add_subparsers(dest="verb", required=True)
        for name, verb in self._verbs.items():
            p = sub.add_parser(name, help=verb.help, parents=[common])
            for flags, kwargs in verb.arguments:
                p.add_argument(*flags, **kwargs)
        return parser

    def dispatch(self, argv: Sequence[str]) -> int:
        parser = self.parser()
        try:
            args = parser.parse_args(list(argv))
        except SystemExit as exc:
            # argparse already printed its message
            return 0 if exc.code in (0, None) else UsageError.exit_code

        start = time.perf_counter()
        try:
            configure(args.log_level)
            outcome = self._verbs[args.verb].handler(args)
        except AntirotorError as exc:
            logger.info("[cli] %s failed: %s", args.verb, exc)
            if args.json:
                print(json.dumps({"error": str(exc), "kind": exc.kind}, ensure_ascii=False))
            else:
                print(f"error ({exc.kind}): {exc}", file=sys.stderr)
            return exc.exit_code
        elapsed = time.perf_counter() - start

        options = {k: v for k, v in vars(args).items() if k not in _PRESENTATION}
        report = build_report(
            args.verb,
            outcome.algebra,
            outcome.algebra_json,
            options,
            outcome.results,
            outcome.warnings,
            elapsed if args.timing else None,
        )
        if args.json:
            print(render_json(report))
        else:
            print(outcome.text if outcome.text is not None else render_text(report))
        return 3 if outcome.failed else 0


cli_bp = VerbBlueprint("cli")

from . import routes  # noqa: F401, E402
