"""Command-line entry point.

    mkbs validate KB.mkb
    mkbs consult KB.mkb --goal diagnosis [--answers FILE] [--threshold T] [--trace OUT]
    mkbs net KB.mkb --relation treatment --node lung_cancer [--inherit]
    mkbs serve --kb-dir DIR --port 8787 [--threshold T] [--host H] [--ui-dir DIR]

Exit codes: 0 success, 1 domain failure (invalid KB content, failed
consultation), 2 environment failure (unreadable file, unparseable source,
unusable port). MKBS_THRESHOLD provides the default pruning threshold.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .editor import KbStore
from .engine import (
    ConsultationError,
    MissingAnswerError,
    Question,
    ScriptedProvider,
    consult,
    parse_answers,
    result_to_document,
)
from .rulelang import (
    KbSemanticError,
    KbSyntaxError,
    format_value,
    parse_kb,
    validate_kb,
)
from .semnet import SemanticNet
from .service import Api, serve


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mkbs", description="knowledge-based expert-system shell")
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("validate", help="check a knowledge base and print diagnostics")
    p.add_argument("kb_path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("consult", help="run a consultation, interactive or scripted")
    p.add_argument("kb_path")
    p.add_argument("--goal", required=True, help="goal attribute to diagnose")
    p.add_argument("--answers", help="scripted answers file (strict batch mode)")
    p.add_argument("--threshold", type=float, default=_default_threshold(), help="pruning/report threshold")
    p.add_argument("--trace", help="write the trace document to this file")
    p.set_defaults(func=cmd_consult)

    p = sub.add_parser("net", help="query the semantic net")
    p.add_argument("kb_path")
    p.add_argument("--relation", required=True)
    p.add_argument("--node", required=True)
    p.add_argument("--inherit", action="store_true", help="include properties inherited along isa")
    p.set_defaults(func=cmd_net)

    p = sub.add_parser("serve", help="serve consultations over HTTP")
    p.add_argument("--kb-dir", required=True, help="directory of .mkb files; basenames become kb ids")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--threshold", type=float, default=_default_threshold())
    p.add_argument("--session-limit", type=int, default=int(os.environ.get("MKBS_SESSION_LIMIT", 1024)),
                   help="maximum number of live sessions")
    p.add_argument("--ui-dir", help="serve these static assets outside the API namespace")
    p.set_defaults(func=cmd_serve)

    return parser


def _default_threshold() -> float:
    raw = os.environ.get("MKBS_THRESHOLD")
    if raw is None:
        return 0.2
    try:
        return float(raw)
    except ValueError:
        print(f"mkbs: ignoring bad MKBS_THRESHOLD {raw!r}", file=sys.stderr)
        return 0.2


def _read(path: str) -> str | None:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"mkbs: cannot read {path}: {exc}", file=sys.stderr)
        return None


def cmd_validate(args: argparse.Namespace) -> int:
    source = _read(args.kb_path)
    if source is None:
        return 2
    try:
        kb = parse_kb(source)
    except KbSyntaxError as exc:
        for diag in exc.diagnostics:
            print(diag.render(), file=sys.stderr)
        return 2
    except KbSemanticError as exc:
        for diag in exc.diagnostics:
            print(diag.render(), file=sys.stderr)
        return 1
    for diag in validate_kb(kb):
        print(diag.render(), file=sys.stderr)
    return 0


def _load_kb(path: str) -> tuple[int, object]:
    source = _read(path)
    if source is None:
        return 2, None
    try:
        return 0, parse_kb(source)
    except KbSyntaxError as exc:
        for diag in exc.diagnostics:
            print(diag.render(), file=sys.stderr)
        return 2, None
    except KbSemanticError as exc:
        for diag in exc.diagnostics:
            print(diag.render(), file=sys.stderr)
        return 1, None


def interactive_provider(question: Question) -> float:
    """Prompt on the terminal until the reply is yes, no, or a number in [0, 1]."""
    prompt = question.prompt
    if question.menu:
        prompt += " (one of: " + ", ".join(format_value(v) for v in question.menu) + ")"
    while True:
        reply = input(f"{prompt} [yes/no/0..1] > ").strip().lower()
        if reply == "yes":
            return 1.0
        if reply == "no":
            return 0.0
        try:
            cf = float(reply)
        except ValueError:
            print("please answer yes, no, or a number between 0 and 1")
            continue
        if 0.0 <= cf <= 1.0:
            return cf
        print("please answer yes, no, or a number between 0 and 1")


def cmd_consult(args: argparse.Namespace) -> int:
    status, kb = _load_kb(args.kb_path)
    if kb is None:
        return status
    if args.answers is not None:
        source = _read(args.answers)
        if source is None:
            return 2
        try:
            provider = ScriptedProvider(parse_answers(source))
        except KbSyntaxError as exc:
            for diag in exc.diagnostics:
                print(diag.render(), file=sys.stderr)
            return 2
    else:
        provider = interactive_provider
    try:
        result = consult(kb, args.goal, provider, threshold=args.threshold)
    except MissingAnswerError as exc:
        print(f"mkbs: {exc}", file=sys.stderr)
        return 1
    except ConsultationError as exc:
        print(f"mkbs: {exc}", file=sys.stderr)
        return 1
    if args.trace:
        try:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(result_to_document(result))
        except OSError as exc:
            print(f"mkbs: cannot write {args.trace}: {exc}", file=sys.stderr)
            return 2
    if not result.ranked:
        print("no conclusion above threshold")
        return 0
    for value, cf in result.ranked:
        print(f"{format_value(value)} {cf:.2f}")
    return 0


def cmd_net(args: argparse.Namespace) -> int:
    status, kb = _load_kb(args.kb_path)
    if kb is None:
        return status
    net = SemanticNet.from_kb(kb)
    answer = net.query(args.relation, args.node, inherit=args.inherit)
    for result in answer.results:
        if result.via is None:
            print(result.object)
        else:
            print(f"{result.object} (via {result.via})")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    log = logging.getLogger("mkbs.service")
    try:
        entries = sorted(os.listdir(args.kb_dir))
    except OSError as exc:
        print(f"mkbs: cannot read {args.kb_dir}: {exc}", file=sys.stderr)
        return 2
    stores: dict[str, KbStore] = {}
    for name in entries:
        if not name.endswith(".mkb"):
            continue
        path = os.path.join(args.kb_dir, name)
        kb_id = name[: -len(".mkb")]
        try:
            stores[kb_id] = KbStore.open(path)
        except (OSError, KbSyntaxError, KbSemanticError) as exc:
            log.warning("skipping %s: %s", path, exc)
    if not stores:
        print(f"mkbs: no valid .mkb knowledge base in {args.kb_dir}", file=sys.stderr)
        return 2
    api = Api(stores, threshold=args.threshold, session_limit=args.session_limit)
    try:
        server = serve(api, args.host, args.port, ui_dir=args.ui_dir)
    except OSError as exc:
        print(f"mkbs: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 2
    host, port = server.server_address[:2]
    log.info("serving %d knowledge base(s) on http://%s:%d", len(stores), host, port)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        log.info("shutting down")
    finally:
        server.server_close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
