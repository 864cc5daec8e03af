"""Presentations of string groups generated by involutions.

A presentation is a generator count plus a list of relator words; each word is
a tuple of 0-based generator indices.  The involution relators s_i^2 are
implicit everywhere and never stored.
"""

from __future__ import annotations

from dataclasses import dataclass

Word = tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    rank: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        for rel in self.relators:
            for g in rel:
                if not 0 <= g < self.rank:
                    raise ValueError(f"generator index {g} out of range in relator {rel}")

    def with_relators(self, extra) -> "Presentation":
        """New presentation with additional relators appended."""
        return Presentation(self.rank, self.relators + tuple(tuple(w) for w in extra))

    def shifted(self, offset: int, rank: int) -> "Presentation":
        """Reindex generators by `offset` into a presentation of larger rank."""
        rels = tuple(tuple(g + offset for g in rel) for rel in self.relators)
        return Presentation(rank, rels)


def power_word(base: Word, exponent: int) -> Word:
    return tuple(base) * exponent


def normalize_relators(relators) -> tuple[Word, ...]:
    """Drop implicit involution relators and duplicates, keep first-seen order."""
    seen = set()
    out = []
    for rel in relators:
        rel = tuple(rel)
        if len(rel) == 2 and rel[0] == rel[1]:
            continue
        if rel and rel not in seen:
            seen.add(rel)
            out.append(rel)
    return tuple(out)


def format_presentation(pres: Presentation, comment: str | None = None) -> str:
    """Render in the text format: `rank n` then one `rel i j k ...` line per relator."""
    lines = []
    if comment:
        for row in comment.splitlines():
            lines.append(f"# {row}")
    lines.append(f"rank {pres.rank}")
    for rel in pres.relators:
        lines.append("rel " + " ".join(str(g) for g in rel))
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Parse the `rank` / `rel` text format; `#` starts a comment."""
    rank = None
    relators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "rank":
            if rank is not None:
                raise ValueError(f"line {lineno}: duplicate rank line")
            if len(fields) != 2:
                raise ValueError(f"line {lineno}: expected `rank n`")
            rank = int(fields[1])
        elif fields[0] == "rel":
            if rank is None:
                raise ValueError(f"line {lineno}: `rel` before `rank`")
            relators.append(tuple(int(f) for f in fields[1:]))
        else:
            raise ValueError(f"line {lineno}: unknown directive {fields[0]!r}")
    if rank is None:
        raise ValueError("missing `rank` line")
    return Presentation(rank, tuple(relators))
