"""Question-at-a-time consultation sessions.

The engine's answer provider is the suspension point: a session replays all
answers received so far into a fresh consultation run, and the first question
the replay cannot answer parks the session in AWAITING_ANSWER. Because a
consultation is deterministic for a fixed knowledge base and answer set, each
re-run walks the identical path, so a session never repeats a question and
needs no dedicated thread while parked.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from ..engine import (
    ConsultationError,
    ConsultationResult,
    Question,
    consult,
)
from ..rulelang import AVPair, KnowledgeBase

AWAITING_ANSWER = "awaiting_answer"
RUNNING = "running"
DONE = "done"
ABORTED = "aborted"

DEFAULT_SESSION_LIMIT = 1024
DEFAULT_SESSION_TTL = 30 * 60.0  # seconds of inactivity before reclamation


class _NeedAnswer(Exception):
    """Raised by the replay provider when the consultation needs the user."""

    def __init__(self, question: Question):
        self.question = question
        super().__init__(question.prompt)


class _ReplayProvider:
    def __init__(self, answers: dict[AVPair, float]):
        self.answers = answers

    def __call__(self, question: Question) -> float:
        try:
            return self.answers[question.avpair]
        except KeyError:
            raise _NeedAnswer(question) from None


@dataclass
class Session:
    session_id: str
    kb_id: str
    kb: KnowledgeBase  # snapshot taken at creation; edits never touch it
    revision: int
    goal: str
    threshold: float
    report_threshold: float
    state: str = RUNNING
    answers: dict[AVPair, float] = field(default_factory=dict)
    question_counter: int = 0
    pending_id: int | None = None
    pending: Question | None = None
    result: ConsultationResult | None = None
    error: str | None = None
    created: float = field(default_factory=time.monotonic)
    last_active: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def advance(self) -> None:
        """Run the consultation to its next suspension point or completion."""
        self.state = RUNNING
        self.pending = None
        self.pending_id = None
        try:
            result = consult(
                self.kb,
                self.goal,
                _ReplayProvider(self.answers),
                threshold=self.threshold,
                report_threshold=self.report_threshold,
            )
        except _NeedAnswer as need:
            self.question_counter += 1
            self.pending = need.question
            self.pending_id = self.question_counter
            self.state = AWAITING_ANSWER
        except ConsultationError as exc:
            self.state = ABORTED
            self.error = str(exc)
        else:
            self.state = DONE
            self.result = result
        self.last_active = time.monotonic()

    def record_answer(self, cf: float) -> None:
        assert self.pending is not None
        self.answers[self.pending.avpair] = cf


class SessionManager:
    """Holds live sessions, enforcing the capacity limit and idle expiry."""

    def __init__(
        self,
        limit: int = DEFAULT_SESSION_LIMIT,
        ttl: float = DEFAULT_SESSION_TTL,
    ):
        self.limit = limit
        self.ttl = ttl
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)

    def create(
        self,
        kb_id: str,
        kb: KnowledgeBase,
        revision: int,
        goal: str,
        threshold: float,
        report_threshold: float,
    ) -> Session:
        with self._lock:
            self._purge_expired()
            if len(self._sessions) >= self.limit:
                raise CapacityError(self.limit)
            session = Session(
                session_id=secrets.token_hex(16),
                kb_id=kb_id,
                kb=kb,
                revision=revision,
                goal=goal,
                threshold=threshold,
                report_threshold=report_threshold,
            )
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            self._purge_expired()
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_active = time.monotonic()
            return session

    def _purge_expired(self) -> None:
        now = time.monotonic()
        expired = [
            sid for sid, s in self._sessions.items() if now - s.last_active > self.ttl
        ]
        for sid in expired:
            del self._sessions[sid]


class CapacityError(Exception):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"live session limit of {limit} reached")
