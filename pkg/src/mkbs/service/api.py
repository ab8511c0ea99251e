"""HTTP/JSON wire protocol, independent of the transport.

Routes:
    GET    /kbs
    POST   /kbs/{kb_id}/sessions          {"goal": "..."}
    GET    /sessions/{id}
    POST   /sessions/{id}/answers         {"question_id": N, "cf": X}
    GET    /sessions/{id}/trace
    GET    /kbs/{kb_id}/net?relation=R&node=N&inherit=true|false
    GET    /kbs/{kb_id}/net/describe?node=N
    GET    /kbs/{kb_id}/rules
    POST   /kbs/{kb_id}/rules             {"source": "rule ... ."}
    PUT    /kbs/{kb_id}/rules/{rule_id}   {"source": "rule ... ."}
    DELETE /kbs/{kb_id}/rules/{rule_id}

Every session response carries the session state name and the KB revision the
session was started against. Errors come back as {"error": {code, message}}
with 4xx status for client mistakes and 5xx for server trouble.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..editor import EditorError, KbStore
from ..engine import (
    DEFAULT_THRESHOLD,
    Question,
    result_to_jsonable,
    round_cf,
)
from ..rulelang import (
    Diagnostic,
    KbSemanticError,
    KbSyntaxError,
    Rule,
    format_rule,
    is_valid_cf,
    parse_kb,
)
from ..semnet import SemanticNet
from .sessions import (
    ABORTED,
    AWAITING_ANSWER,
    DONE,
    CapacityError,
    Session,
    SessionManager,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, diagnostics: list[Diagnostic] | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.diagnostics = diagnostics or []
        super().__init__(f"{code}: {message}")


def dump_json(payload: dict) -> bytes:
    """The one JSON encoding used on the wire; key order is preserved."""
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


@dataclass(frozen=True, slots=True)
class Response:
    status: int
    payload: dict

    @property
    def body(self) -> bytes:
        return dump_json(self.payload)


class Api:
    """Protocol logic over a set of knowledge-base stores and live sessions."""

    def __init__(
        self,
        stores: dict[str, KbStore],
        threshold: float = DEFAULT_THRESHOLD,
        report_threshold: float | None = None,
        session_limit: int | None = None,
        session_ttl: float | None = None,
    ):
        self.stores = dict(stores)
        self.threshold = threshold
        self.report_threshold = threshold if report_threshold is None else report_threshold
        kwargs = {}
        if session_limit is not None:
            kwargs["limit"] = session_limit
        if session_ttl is not None:
            kwargs["ttl"] = session_ttl
        self.sessions = SessionManager(**kwargs)

    # -- dispatch ----------------------------------------------------------

    def dispatch(self, method: str, path: str, query: dict[str, str], body: bytes | None) -> Response:
        try:
            return self._route(method, path, query, body)
        except ApiError as exc:
            error: dict = {"code": exc.code, "message": exc.message}
            if exc.diagnostics:
                error["diagnostics"] = [_diag_json(d) for d in exc.diagnostics]
            return Response(exc.status, {"error": error})

    def _route(self, method: str, path: str, query: dict[str, str], body: bytes | None) -> Response:
        parts = [p for p in path.split("/") if p]
        if parts == ["kbs"] and method == "GET":
            return self.list_kbs()
        if len(parts) == 3 and parts[0] == "kbs" and parts[2] == "sessions" and method == "POST":
            return self.create_session(parts[1], _json_body(body))
        if len(parts) == 2 and parts[0] == "sessions" and method == "GET":
            return self.get_session(parts[1])
        if len(parts) == 3 and parts[0] == "sessions" and parts[2] == "answers" and method == "POST":
            return self.submit_answer(parts[1], _json_body(body))
        if len(parts) == 3 and parts[0] == "sessions" and parts[2] == "trace" and method == "GET":
            return self.get_trace(parts[1])
        if len(parts) == 3 and parts[0] == "kbs" and parts[2] == "net" and method == "GET":
            return self.net_query(parts[1], query)
        if len(parts) == 4 and parts[0] == "kbs" and parts[2:] == ["net", "describe"] and method == "GET":
            return self.net_describe(parts[1], query)
        if len(parts) == 3 and parts[0] == "kbs" and parts[2] == "rules":
            if method == "GET":
                return self.list_rules(parts[1])
            if method == "POST":
                return self.add_rule(parts[1], _json_body(body))
        if len(parts) == 4 and parts[0] == "kbs" and parts[2] == "rules":
            if method == "PUT":
                return self.update_rule(parts[1], parts[3], _json_body(body))
            if method == "DELETE":
                return self.delete_rule(parts[1], parts[3])
        raise ApiError(404, "NOT_FOUND", f"no route for {method} {path}")

    # -- knowledge bases ---------------------------------------------------

    def list_kbs(self) -> Response:
        kbs = [
            {
                "kb_id": kb_id,
                "revision": store.revision,
                "goals": list(store.kb.goals),
                "rule_count": len(store.kb.rules),
            }
            for kb_id, store in sorted(self.stores.items())
        ]
        return Response(200, {"kbs": kbs})

    def _store(self, kb_id: str) -> KbStore:
        store = self.stores.get(kb_id)
        if store is None:
            raise ApiError(404, "UNKNOWN_KB", f"no knowledge base {kb_id!r}")
        return store

    # -- sessions ----------------------------------------------------------

    def create_session(self, kb_id: str, body: dict) -> Response:
        store = self._store(kb_id)
        goal = body.get("goal")
        if not isinstance(goal, str) or not goal:
            raise ApiError(400, "BAD_REQUEST", "body must carry a goal attribute name")
        kb = store.kb
        if goal not in kb.goals and not any(r.conclusion.attribute == goal for r in kb.rules):
            raise ApiError(400, "UNKNOWN_GOAL", f"no goal or rule concludes {goal!r}")
        try:
            session = self.sessions.create(
                kb_id, kb, store.revision, goal, self.threshold, self.report_threshold
            )
        except CapacityError as exc:
            raise ApiError(503, "CAPACITY", str(exc)) from None
        with session.lock:
            session.advance()
            return Response(201, self._session_view(session))

    def _session(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise ApiError(404, "UNKNOWN_SESSION", f"no live session {session_id!r}")
        return session

    def get_session(self, session_id: str) -> Response:
        session = self._session(session_id)
        with session.lock:
            return Response(200, self._session_view(session))

    def submit_answer(self, session_id: str, body: dict) -> Response:
        session = self._session(session_id)
        if not session.lock.acquire(blocking=False):
            raise ApiError(409, "SESSION_BUSY", "another call on this session is in flight")
        try:
            if session.state != AWAITING_ANSWER:
                raise ApiError(409, "STALE_QUESTION", f"session is {session.state}, not awaiting an answer")
            question_id = body.get("question_id")
            if question_id != session.pending_id:
                raise ApiError(
                    409,
                    "STALE_QUESTION",
                    f"pending question is #{session.pending_id}, got {question_id!r}",
                )
            cf = body.get("cf")
            if not isinstance(cf, (int, float)) or isinstance(cf, bool) or not is_valid_cf(float(cf)):
                raise ApiError(400, "CF_RANGE", "cf must be a number in [0, 1]")
            session.record_answer(float(cf))
            session.advance()
            return Response(200, self._session_view(session))
        finally:
            session.lock.release()

    def get_trace(self, session_id: str) -> Response:
        session = self._session(session_id)
        with session.lock:
            if session.state != DONE:
                raise ApiError(409, "NOT_DONE", f"session is {session.state}")
            assert session.result is not None
            return Response(200, result_to_jsonable(session.result))

    def _session_view(self, session: Session) -> dict:
        view: dict = {
            "session_id": session.session_id,
            "kb_id": session.kb_id,
            "revision": session.revision,
            "goal": session.goal,
            "state": session.state,
        }
        if session.state == AWAITING_ANSWER:
            assert session.pending is not None and session.pending_id is not None
            view["question"] = _question_json(session.pending_id, session.pending)
        elif session.state == DONE:
            assert session.result is not None
            view["result"] = {
                "goal": session.result.goal,
                "ranked": [
                    {"value": value, "cf": round_cf(cf)} for value, cf in session.result.ranked
                ],
            }
        elif session.state == ABORTED:
            view["error"] = {"code": "CONSULTATION_ERROR", "message": session.error or ""}
        return view

    # -- semantic net ------------------------------------------------------

    def net_query(self, kb_id: str, query: dict[str, str]) -> Response:
        store = self._store(kb_id)
        relation = query.get("relation", "")
        node = query.get("node", "")
        if not relation or not node:
            raise ApiError(400, "BAD_REQUEST", "relation and node query parameters are required")
        inherit = query.get("inherit", "false").lower() in ("1", "true", "yes")
        net = SemanticNet.from_kb(store.kb)
        return Response(200, net.query(relation, node, inherit).to_jsonable())

    def net_describe(self, kb_id: str, query: dict[str, str]) -> Response:
        store = self._store(kb_id)
        node = query.get("node", "")
        if not node:
            raise ApiError(400, "BAD_REQUEST", "node query parameter is required")
        net = SemanticNet.from_kb(store.kb)
        described = net.describe(node)
        return Response(
            200,
            {
                "node": node,
                "relations": {rel: answer.to_jsonable() for rel, answer in described.items()},
            },
        )

    # -- rule editing ------------------------------------------------------

    def list_rules(self, kb_id: str) -> Response:
        store = self._store(kb_id)
        rules = [
            {"id": rule.id, "position": position, "source": format_rule(rule)}
            for rule, position in store.list_rules()
        ]
        return Response(200, {"revision": store.revision, "rules": rules})

    def add_rule(self, kb_id: str, body: dict) -> Response:
        store = self._store(kb_id)
        rule = _parse_rule_source(body)
        result = _edit(lambda: store.add_rule(rule))
        return Response(
            201,
            {
                "revision": result.revision,
                "rule": {"id": rule.id, "source": format_rule(rule)},
                "warnings": [_diag_json(d) for d in result.warnings],
            },
        )

    def update_rule(self, kb_id: str, rule_id: str, body: dict) -> Response:
        store = self._store(kb_id)
        rule = _parse_rule_source(body)
        if rule.id != rule_id:
            raise ApiError(400, "BAD_RULE", f"source declares id {rule.id!r}, endpoint targets {rule_id!r}")
        result = _edit(lambda: store.update_rule(rule_id, rule))
        return Response(
            200,
            {
                "revision": result.revision,
                "rule": {"id": rule.id, "source": format_rule(rule)},
                "warnings": [_diag_json(d) for d in result.warnings],
            },
        )

    def delete_rule(self, kb_id: str, rule_id: str) -> Response:
        store = self._store(kb_id)
        result = _edit(lambda: store.delete_rule(rule_id))
        return Response(
            200,
            {"revision": result.revision, "warnings": [_diag_json(d) for d in result.warnings]},
        )


def _edit(operation):
    try:
        return operation()
    except EditorError as exc:
        status = {
            "DUPLICATE_ID": 409,
            "NOT_FOUND": 404,
            "VALIDATION_FAILED": 422,
            "PERSIST_FAILED": 500,
        }.get(exc.code, 400)
        raise ApiError(status, exc.code, str(exc), exc.diagnostics) from None


def _parse_rule_source(body: dict) -> Rule:
    source = body.get("source")
    if not isinstance(source, str) or not source.strip():
        raise ApiError(400, "BAD_REQUEST", "body must carry the rule in .mkb source form")
    try:
        kb = parse_kb(source)
    except KbSyntaxError as exc:
        raise ApiError(400, "PARSE_ERROR", "rule source does not parse", exc.diagnostics) from None
    except KbSemanticError as exc:
        raise ApiError(422, "VALIDATION_FAILED", "rule source is invalid", exc.diagnostics) from None
    if len(kb.rules) != 1 or kb.askables or kb.goals or kb.triples:
        raise ApiError(400, "BAD_RULE", "source must contain exactly one rule statement")
    return kb.rules[0]


def _question_json(question_id: int, question: Question) -> dict:
    return {
        "question_id": question_id,
        "attribute": question.avpair.attribute,
        "value": question.avpair.value,
        "prompt": question.prompt,
        "menu": list(question.menu) if question.menu is not None else None,
    }


def _diag_json(diag: Diagnostic) -> dict:
    return {
        "severity": diag.severity,
        "code": diag.code,
        "message": diag.message,
        "line": diag.loc.line if diag.loc else None,
        "col": diag.loc.col if diag.loc else None,
        "rendered": diag.render(),
    }


def _json_body(body: bytes | None) -> dict:
    if not body:
        raise ApiError(400, "BAD_REQUEST", "request body must be a JSON object")
    try:
        parsed = json.loads(body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ApiError(400, "BAD_REQUEST", f"request body is not valid JSON: {exc}") from None
    if not isinstance(parsed, dict):
        raise ApiError(400, "BAD_REQUEST", "request body must be a JSON object")
    return parsed
