"""Anchor-based word correspondence groups and their corpus-level aggregation.

Every parallel bucket is aligned against its MSA sentence: one group per
MSA token, holding that token's counterpart (or None) from each dialect
present in the bucket. Pharaoh `i-j` files produced by external aligners
can be imported directly; a distance-plus-position aligner is built in so
the pipeline also runs self-contained.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import MSA, ParallelBucket
from .distance import IndelConfig, distance
from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class GroupMember:
    token_index: int
    surface: str


@dataclass(frozen=True)
class AlignmentSet:
    """MSA-anchored aligned-word groups for one bucket."""

    sentence_id: str
    groups: tuple[dict[str, GroupMember | None], ...]


@dataclass(frozen=True)
class AlignerParams:
    lam: float = 0.7    # weight of the distance term vs the position term
    theta: float = 0.5  # minimum score for a link
    anchor: str = MSA

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lam must be in [0, 1]")


def parse_pharaoh_line(line: str) -> list[tuple[int, int]]:
    links = []
    for chunk in line.split():
        left, sep, right = chunk.partition("-")
        if not sep:
            raise ParseError(f"malformed alignment link {chunk!r}")
        try:
            links.append((int(left), int(right)))
        except ValueError:
            raise ParseError(f"malformed alignment link {chunk!r}") from None
    return links


def import_alignments(
    bucket: ParallelBucket,
    files: dict[str, str],
    anchor: str = MSA,
) -> AlignmentSet:
    """Build groups from one Pharaoh line per (anchor, dialect) pair.

    In each line, ``i-j`` links anchor token i to dialect token j. Dialects
    present in the bucket but absent from ``files`` are left out of the
    groups. When several dialect tokens link to one anchor token, the lowest
    index is kept (groups hold at most one member per dialect).
    """
    if anchor not in bucket.sentences:
        raise ValidationError(f"bucket {bucket.sentence_id}: no {anchor} anchor")
    anchor_tokens = bucket.sentences[anchor].tokens
    dialects = [d for d in sorted(bucket.sentences) if d != anchor and d in files]

    links_by_dialect: dict[str, dict[int, int]] = {}
    for dialect in dialects:
        tokens = bucket.sentences[dialect].tokens
        best: dict[int, int] = {}
        for i, j in parse_pharaoh_line(files[dialect]):
            if not 0 <= i < len(anchor_tokens) or not 0 <= j < len(tokens):
                raise ValidationError(
                    f"bucket {bucket.sentence_id}: link {i}-{j} out of range for "
                    f"{anchor}->{dialect}"
                )
            if i not in best or j < best[i]:
                best[i] = j
        links_by_dialect[dialect] = best

    groups = []
    for i, token in enumerate(anchor_tokens):
        group: dict[str, GroupMember | None] = {anchor: GroupMember(i, token.surface)}
        for dialect in dialects:
            j = links_by_dialect[dialect].get(i)
            if j is None:
                group[dialect] = None
            else:
                group[dialect] = GroupMember(
                    j, bucket.sentences[dialect].tokens[j].surface
                )
        groups.append(group)
    return AlignmentSet(bucket.sentence_id, tuple(groups))


def normalized_distance(
    x: str,
    d_x: str,
    y: str,
    d_y: str,
    model,
    costs: IndelConfig,
    memo: dict | None = None,
) -> float:
    """Normalized distance with an optional cross-call memo on word pairs."""
    if memo is None:
        return distance(x, d_x, y, d_y, model, costs).normalized
    key = (x, d_x, y, d_y) if (x, d_x) <= (y, d_y) else (y, d_y, x, d_x)
    value = memo.get(key)
    if value is None:
        value = distance(*key, model, costs).normalized
        memo[key] = value
    return value


def builtin_align(
    bucket: ParallelBucket,
    model,
    params: AlignerParams = AlignerParams(),
    costs: IndelConfig = IndelConfig(),
    memo: dict | None = None,
) -> AlignmentSet:
    """Greedy one-to-one aligner mixing string distance and relative position.

    score(i, j) = lam * (1 - normalized distance) + (1 - lam) * (1 - |i/n - j/m|);
    links are taken by descending score (ties toward smaller (i, j)) subject
    to score >= theta.
    """
    anchor = params.anchor
    if anchor not in bucket.sentences:
        raise ValidationError(f"bucket {bucket.sentence_id}: no {anchor} anchor")
    anchor_tokens = bucket.sentences[anchor].tokens
    n = len(anchor_tokens)
    links_by_dialect: dict[str, dict[int, int]] = {}
    for dialect in sorted(bucket.sentences):
        if dialect == anchor:
            continue
        tokens = bucket.sentences[dialect].tokens
        m = len(tokens)
        scored = []
        for i, a_tok in enumerate(anchor_tokens):
            for j, d_tok in enumerate(tokens):
                norm = normalized_distance(
                    a_tok.surface, anchor, d_tok.surface, dialect, model, costs, memo
                )
                position = 1.0 - abs(i / n - j / m)
                score = params.lam * (1.0 - norm) + (1.0 - params.lam) * position
                if score >= params.theta:
                    scored.append((-score, i, j))
        scored.sort()
        used_i: set[int] = set()
        used_j: set[int] = set()
        chosen: dict[int, int] = {}
        for neg_score, i, j in scored:
            if i in used_i or j in used_j:
                continue
            chosen[i] = j
            used_i.add(i)
            used_j.add(j)
        links_by_dialect[dialect] = chosen

    groups = []
    for i, token in enumerate(anchor_tokens):
        group: dict[str, GroupMember | None] = {anchor: GroupMember(i, token.surface)}
        for dialect, chosen in links_by_dialect.items():
            j = chosen.get(i)
            if j is None:
                group[dialect] = None
            else:
                group[dialect] = GroupMember(
                    j, bucket.sentences[dialect].tokens[j].surface
                )
        groups.append(group)
    return AlignmentSet(bucket.sentence_id, tuple(groups))


@dataclass
class AlignmentAggregate:
    """Corpus-level aggregation: counterpart multisets per (word, dialect)."""

    dialects: tuple[str, ...]
    entries: dict[tuple[str, str], dict[str, Counter]] = field(default_factory=dict)

    def counterparts(self, word: str, dialect: str) -> dict[str, Counter]:
        return self.entries[(word, dialect)]

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self.entries

    def to_tsv(self, path: str | Path) -> None:
        """Dump as word/dialect/counterpart_dialect/counterpart_or_NONE/freq."""
        with open(path, "w", encoding="utf-8") as fh:
            for (word, dialect) in sorted(self.entries):
                by_dialect = self.entries[(word, dialect)]
                for other in sorted(by_dialect):
                    for surface, freq in sorted(
                        by_dialect[other].items(), key=lambda kv: (kv[0] is None, kv[0] or "")
                    ):
                        label = "NONE" if surface is None else surface
                        fh.write(f"{word}\t{dialect}\t{other}\t{label}\t{freq}\n")


def aggregate(alignment_sets: list[AlignmentSet]) -> AlignmentAggregate:
    """Collect, for every aligned word, its counterparts across all groups.

    A group member with value None records an unaligned slot; each such
    occurrence contributes one NONE count to the other members' multisets.
    """
    entries: dict[tuple[str, str], dict[str, Counter]] = {}
    dialects: set[str] = set()
    for aset in alignment_sets:
        for group in aset.groups:
            dialects.update(group)
            for dialect, member in group.items():
                if member is None:
                    continue
                slot = entries.setdefault((member.surface, dialect), {})
                for other, other_member in group.items():
                    if other == dialect:
                        continue
                    counter = slot.setdefault(other, Counter())
                    counter[None if other_member is None else other_member.surface] += 1
    return AlignmentAggregate(dialects=tuple(sorted(dialects)), entries=entries)
