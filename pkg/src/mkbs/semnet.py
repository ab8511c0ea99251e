"""Semantic net over knowledge-base triples.

Triples relate diseases (or any identifiers) through named relations; `isa`
is the distinguished hierarchy relation. Properties inherit downward: a query
with inheritance also surfaces values attached to ancestors, each tagged with
the ancestor it came from. The net is immutable once built and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rulelang import KnowledgeBase, Triple


@dataclass(frozen=True, slots=True)
class NetResult:
    object: str
    via: str | None = None  # ancestor the value was inherited from; None if direct


@dataclass(frozen=True, slots=True)
class NetAnswer:
    relation: str
    node: str
    inherit: bool
    results: tuple[NetResult, ...]

    def to_jsonable(self) -> dict:
        return {
            "relation": self.relation,
            "node": self.node,
            "results": [{"object": r.object, "via": r.via} for r in self.results],
        }


class SemanticNet:
    """Triple store indexed by relation and subject, with the isa hierarchy."""

    def __init__(self, triples: tuple[Triple, ...] | list[Triple]):
        self.triples = tuple(triples)
        self._by_relation_subject: dict[tuple[str, str], list[str]] = {}
        self._parents: dict[str, list[str]] = {}
        self._children: dict[str, list[str]] = {}
        self.relations: list[str] = []
        for triple in self.triples:
            key = (triple.relation, triple.subject)
            self._by_relation_subject.setdefault(key, []).append(triple.object)
            if triple.relation not in self.relations:
                self.relations.append(triple.relation)
            if triple.relation == "isa":
                self._parents.setdefault(triple.subject, []).append(triple.object)
                self._children.setdefault(triple.object, []).append(triple.subject)

    @staticmethod
    def from_kb(kb: KnowledgeBase) -> "SemanticNet":
        return SemanticNet(kb.triples)

    def nodes(self) -> list[str]:
        """Every identifier that occurs as a subject or object, in source order."""
        seen: list[str] = []
        for triple in self.triples:
            for name in (triple.subject, triple.object):
                if name not in seen:
                    seen.append(name)
        return seen

    def objects(self, relation: str, subject: str) -> list[str]:
        return list(self._by_relation_subject.get((relation, subject), ()))

    def subtypes(self, node: str) -> list[str]:
        """Transitive isa descendants, breadth-first, deduplicated, node excluded."""
        return _bfs(node, self._children)

    def ancestors(self, node: str) -> list[str]:
        """Transitive isa ancestors, breadth-first, deduplicated, node excluded."""
        return _bfs(node, self._parents)

    def query(self, relation: str, node: str, inherit: bool = False) -> NetAnswer:
        """Objects of relation(node, X); with inherit, ancestors' objects too.

        Direct results come first, then inherited ones by ancestor distance;
        an object is reported once, with the nearest provenance.
        """
        results: list[NetResult] = []
        seen: set[str] = set()
        for obj in self.objects(relation, node):
            if obj not in seen:
                seen.add(obj)
                results.append(NetResult(obj))
        if inherit:
            for ancestor in self.ancestors(node):
                for obj in self.objects(relation, ancestor):
                    if obj not in seen:
                        seen.add(obj)
                        results.append(NetResult(obj, via=ancestor))
        return NetAnswer(relation, node, inherit, tuple(results))

    def describe(self, node: str) -> dict[str, NetAnswer]:
        """Inherited query for every relation in the net, empty answers omitted."""
        out: dict[str, NetAnswer] = {}
        for relation in sorted(self.relations):
            answer = self.query(relation, node, inherit=True)
            if answer.results:
                out[relation] = answer
        return out


def _bfs(start: str, edges: dict[str, list[str]]) -> list[str]:
    order: list[str] = []
    seen = {start}
    frontier = [start]
    while frontier:
        next_frontier: list[str] = []
        for node in frontier:
            for neighbor in edges.get(node, ()):
                if neighbor not in seen:
                    seen.add(neighbor)
                    order.append(neighbor)
                    next_frontier.append(neighbor)
        frontier = next_frontier
    return order
