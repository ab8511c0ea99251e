"""Live knowledge-base editing with validation gating and atomic persistence.

A KbStore owns the current KnowledgeBase snapshot for one backing `.mkb` file.
Mutations (add/update/delete rule) are validated before they take effect: a
mutation that would introduce an error is rejected atomically, leaving the
snapshot, the revision, and the file untouched. Successful mutations bump the
revision, rewrite the file via write-temp-then-rename, and publish a fresh
immutable snapshot; consultations already running keep the snapshot they
started with.
"""

from __future__ import annotations

import os
import tempfile
import threading
from collections import deque
from dataclasses import dataclass, replace

from .rulelang import (
    ERROR,
    Diagnostic,
    KbSemanticError,
    KnowledgeBase,
    Rule,
    parse_kb,
    serialize_kb,
    validate_kb,
)


class EditorError(Exception):
    def __init__(self, code: str, message: str, diagnostics: list[Diagnostic] | None = None):
        self.code = code
        self.diagnostics = diagnostics or []
        super().__init__(message)


@dataclass(frozen=True, slots=True)
class EditResult:
    revision: int
    warnings: tuple[Diagnostic, ...]


class KbStore:
    """Single-writer, multi-reader store for one knowledge base.

    Reads (`store.kb`) are wait-free snapshot reads; mutations serialize on an
    internal lock. The snapshot always passes validation with zero errors.
    """

    UNDO_LIMIT = 100

    def __init__(self, kb: KnowledgeBase, path: str | os.PathLike | None = None):
        errors = [d for d in validate_kb(kb) if d.severity == ERROR]
        if errors:
            raise KbSemanticError(errors)
        self._kb = kb
        self._path = os.fspath(path) if path is not None else None
        self._lock = threading.Lock()
        self._undo: deque[tuple[int, str, tuple]] = deque(maxlen=self.UNDO_LIMIT)

    @staticmethod
    def open(path: str | os.PathLike) -> "KbStore":
        with open(path, encoding="utf-8") as fh:
            kb = parse_kb(fh.read())
        return KbStore(kb, path)

    @property
    def kb(self) -> KnowledgeBase:
        return self._kb

    @property
    def revision(self) -> int:
        return self._kb.revision

    @property
    def path(self) -> str | None:
        return self._path

    def list_rules(self) -> list[tuple[Rule, int]]:
        """Rules with their conflict-resolution positions, read-only."""
        return [(rule, i) for i, rule in enumerate(self._kb.rules)]

    def add_rule(self, rule: Rule) -> EditResult:
        with self._lock:
            kb = self._kb
            if kb.rule_index(rule.id) is not None:
                raise EditorError("DUPLICATE_ID", f"rule id {rule.id!r} already exists")
            result = self._commit(replace(kb, rules=kb.rules + (rule,)))
            self._undo.append((result.revision, "delete", (rule.id,)))
            return result

    def update_rule(self, rule_id: str, new_rule: Rule) -> EditResult:
        if new_rule.id != rule_id:
            raise EditorError("ID_MISMATCH", "replacement rule must keep the same id")
        with self._lock:
            kb = self._kb
            index = kb.rule_index(rule_id)
            if index is None:
                raise EditorError("NOT_FOUND", f"no rule with id {rule_id!r}")
            old = kb.rules[index]
            rules = kb.rules[:index] + (new_rule,) + kb.rules[index + 1 :]
            result = self._commit(replace(kb, rules=rules))
            self._undo.append((result.revision, "update", (rule_id, old)))
            return result

    def delete_rule(self, rule_id: str) -> EditResult:
        with self._lock:
            kb = self._kb
            index = kb.rule_index(rule_id)
            if index is None:
                raise EditorError("NOT_FOUND", f"no rule with id {rule_id!r}")
            old = kb.rules[index]
            rules = kb.rules[:index] + kb.rules[index + 1 :]
            result = self._commit(replace(kb, rules=rules))
            self._undo.append((result.revision, "insert", (index, old)))
            return result

    def undo(self) -> EditResult:
        """Revert the most recent mutation (itself a new, validated revision)."""
        with self._lock:
            if not self._undo:
                raise EditorError("NOTHING_TO_UNDO", "undo log is empty")
            _, op, args = self._undo.pop()
            kb = self._kb
            if op == "delete":
                (rule_id,) = args
                index = kb.rule_index(rule_id)
                if index is None:
                    raise EditorError("NOT_FOUND", f"no rule with id {rule_id!r}")
                rules = kb.rules[:index] + kb.rules[index + 1 :]
            elif op == "update":
                rule_id, old = args
                index = kb.rule_index(rule_id)
                if index is None:
                    raise EditorError("NOT_FOUND", f"no rule with id {rule_id!r}")
                rules = kb.rules[:index] + (old,) + kb.rules[index + 1 :]
            else:  # insert
                index, old = args
                rules = kb.rules[:index] + (old,) + kb.rules[index:]
            return self._commit(replace(kb, rules=rules))

    def _commit(self, candidate: KnowledgeBase) -> EditResult:
        """Validate-or-reject, persist, then publish; caller holds the lock."""
        diagnostics = validate_kb(candidate)
        errors = [d for d in diagnostics if d.severity == ERROR]
        if errors:
            raise EditorError("VALIDATION_FAILED", "mutation rejected by validation", errors)
        warnings = tuple(d for d in diagnostics if d.severity != ERROR)
        committed = replace(candidate, revision=self._kb.revision + 1)
        if self._path is not None:
            self._write_file(committed)
        self._kb = committed
        return EditResult(committed.revision, warnings)

    def _write_file(self, kb: KnowledgeBase) -> None:
        directory = os.path.dirname(os.path.abspath(self._path))
        try:
            fd, tmp = tempfile.mkstemp(prefix=".mkb-", dir=directory)
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(serialize_kb(kb))
                os.replace(tmp, self._path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            raise EditorError("PERSIST_FAILED", f"could not write {self._path}: {exc}") from exc
