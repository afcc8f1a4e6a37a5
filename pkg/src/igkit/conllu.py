"""CoNLL-U ingestion: tokens, dependency trees, documents.

Only syntactic-word lines are kept.  Multi-word-token ranges (``3-4``) and
empty nodes (``3.1``) are skipped, and the enhanced-dependency column is
ignored; the downstream rule tagger works on plain HEAD/DEPREL edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ConlluParseError(ValueError):
    """Malformed CoNLL-U input. Carries the 1-based line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class TreeStructureError(ValueError):
    """Token lines that do not form a single-rooted, acyclic tree."""


class TokenLookupError(KeyError):
    """Token index not present in the tree."""


@dataclass(frozen=True)
class Token:
    """One syntactic word: 1-based index, head index (0 = root)."""

    index: int
    surface: str
    lemma: str
    upos: str
    feats: dict[str, str]
    head: int
    deprel: str

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ValueError(f"head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValueError(f"token {self.index} cannot head itself")
        if not self.deprel:
            raise ValueError(f"token {self.index} has an empty deprel")


class DepTree:
    """A parsed sentence: ordered tokens plus parent/child navigation."""

    def __init__(self, tokens: list[Token], metadata: dict[str, str] | None = None,
                 comments: list[str] | None = None):
        self.tokens = list(tokens)
        self.metadata = dict(metadata or {})
        self.comments = list(comments or [])
        self._by_index = {t.index: t for t in self.tokens}
        self._children: dict[int, list[Token]] = {t.index: [] for t in self.tokens}
        self._validate()
        for t in self.tokens:
            if t.head != 0:
                self._children[t.head].append(t)

    def _validate(self):
        if not self.tokens:
            raise TreeStructureError("empty sentence")
        if len(self._by_index) != len(self.tokens):
            raise TreeStructureError("duplicate token indices")
        roots = [t for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise TreeStructureError(f"expected exactly one root, found {len(roots)}")
        self._root_index = roots[0].index
        for t in self.tokens:
            if t.head != 0 and t.head not in self._by_index:
                raise TreeStructureError(
                    f"token {t.index} has dangling head {t.head}")
        # cycle check: every token must reach the root
        for t in self.tokens:
            seen = set()
            cur = t
            while cur.head != 0:
                if cur.index in seen:
                    raise TreeStructureError(f"head cycle through token {cur.index}")
                seen.add(cur.index)
                cur = self._by_index[cur.head]

    @property
    def root_index(self) -> int:
        return self._root_index

    @property
    def root(self) -> Token:
        return self._by_index[self._root_index]

    def token(self, index: int) -> Token:
        try:
            return self._by_index[index]
        except KeyError:
            raise TokenLookupError(f"no token with index {index}") from None

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def children(self, parent: int, rel_filter: set[str] | None = None) -> list[Token]:
        """Direct dependents of ``parent`` in surface order.

        ``rel_filter=None`` means no restriction; an empty set matches nothing.
        Filter entries match the deprel exactly or as a bare relation against
        its subtypes (``obl`` matches ``obl:tmod``).
        """
        self.token(parent)
        kids = self._children[parent]
        if rel_filter is None:
            return list(kids)
        return [k for k in kids if deprel_matches(k.deprel, rel_filter)]

    def subtree(self, head: int) -> list[Token]:
        """``head`` plus all transitive dependents, in surface order."""
        self.token(head)
        collected = set()
        stack = [head]
        while stack:
            idx = stack.pop()
            if idx in collected:
                continue
            collected.add(idx)
            stack.extend(k.index for k in self._children[idx])
        return [t for t in self.tokens if t.index in collected]

    @property
    def text(self) -> str:
        return self.metadata.get("text") or " ".join(t.surface for t in self.tokens)


def deprel_matches(deprel: str, rels: set[str] | list[str]) -> bool:
    """True if ``deprel`` equals an entry or is a subtype of a bare entry."""
    for rel in rels:
        if deprel == rel:
            return True
        if ":" not in rel and deprel.startswith(rel + ":"):
            return True
    return False


@dataclass
class Document:
    """A parsed source file: one DepTree per sentence."""

    id: str
    source_path: str = ""
    sentences: list[DepTree] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def lemmas(self) -> set[str]:
        return {t.lemma.lower() for s in self.sentences for t in s.tokens}

    @property
    def text(self) -> str:
        return "\n".join(s.text for s in self.sentences)


def _parse_feats(raw: str) -> dict[str, str]:
    if raw in ("_", ""):
        return {}
    feats = {}
    for pair in raw.split("|"):
        if "=" in pair:
            key, value = pair.split("=", 1)
            feats[key] = value
    return feats


def _format_feats(feats: dict[str, str]) -> str:
    if not feats:
        return "_"
    return "|".join(f"{k}={v}" for k, v in feats.items())


def parse_conllu(text: str) -> list[DepTree]:
    """Parse CoNLL-U text into one DepTree per sentence block.

    Raises ConlluParseError (with the line number) for malformed token
    lines and TreeStructureError for dangling heads, cycles, or a root
    count other than one.
    """
    sentences = []
    tokens: list[Token] = []
    metadata: dict[str, str] = {}
    comments: list[str] = []

    def flush():
        nonlocal tokens, metadata, comments
        if tokens:
            sentences.append(DepTree(tokens, metadata, comments))
        tokens, metadata, comments = [], {}, []

    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                metadata[key.strip()] = value.strip()
            else:
                comments.append(body)
            continue
        fields = line.split("\t")
        if len(fields) != 10:
            raise ConlluParseError(
                f"expected 10 tab-separated columns, got {len(fields)}", line_no)
        tok_id = fields[0]
        if "-" in tok_id or "." in tok_id:
            continue  # multi-word-token range or empty node
        try:
            index = int(tok_id)
            head = int(fields[6])
        except ValueError:
            raise ConlluParseError(
                f"non-integer ID or HEAD field: {tok_id!r}/{fields[6]!r}", line_no)
        try:
            tokens.append(Token(
                index=index,
                surface=fields[1],
                lemma=fields[2],
                upos=fields[3],
                feats=_parse_feats(fields[5]),
                head=head,
                deprel=fields[7],
            ))
        except ValueError as exc:
            raise ConlluParseError(str(exc), line_no)
    flush()
    return sentences


def to_conllu(tree: DepTree) -> str:
    """Serialize a DepTree back to a CoNLL-U sentence block."""
    lines = []
    for key, value in tree.metadata.items():
        lines.append(f"# {key} = {value}")
    for comment in tree.comments:
        lines.append(f"# {comment}")
    for t in tree.tokens:
        lines.append("\t".join([
            str(t.index), t.surface, t.lemma, t.upos, "_",
            _format_feats(t.feats), str(t.head), t.deprel, "_", "_",
        ]))
    return "\n".join(lines) + "\n"


def load_document(path, doc_id: str | None = None,
                  metadata: dict | None = None) -> Document:
    """Read a CoNLL-U file into a Document. ``doc_id`` defaults to the stem."""
    from pathlib import Path

    path = Path(path)
    sentences = parse_conllu(path.read_text(encoding="utf-8"))
    return Document(
        id=doc_id or path.stem,
        source_path=str(path),
        sentences=sentences,
        metadata=dict(metadata or {}),
    )


def token_to_dict(t: Token) -> dict:
    return {
        "index": t.index,
        "surface": t.surface,
        "lemma": t.lemma,
        "upos": t.upos,
        "feats": dict(t.feats),
        "head": t.head,
        "deprel": t.deprel,
    }


def token_from_dict(d: dict) -> Token:
    return Token(
        index=d["index"], surface=d["surface"], lemma=d["lemma"],
        upos=d["upos"], feats=dict(d.get("feats", {})),
        head=d["head"], deprel=d["deprel"],
    )


def tree_to_dict(tree: DepTree) -> dict:
    out = {"tokens": [token_to_dict(t) for t in tree.tokens]}
    if tree.metadata:
        out["metadata"] = dict(tree.metadata)
    if tree.comments:
        out["comments"] = list(tree.comments)
    return out


def tree_from_dict(d: dict) -> DepTree:
    return DepTree(
        [token_from_dict(t) for t in d["tokens"]],
        d.get("metadata"),
        d.get("comments"),
    )


def document_to_dict(doc: Document) -> dict:
    return {
        "id": doc.id,
        "source_path": doc.source_path,
        "metadata": dict(doc.metadata),
        "sentences": [tree_to_dict(s) for s in doc.sentences],
    }


def document_from_dict(d: dict) -> Document:
    return Document(
        id=d["id"],
        source_path=d.get("source_path", ""),
        sentences=[tree_from_dict(s) for s in d["sentences"]],
        metadata=dict(d.get("metadata", {})),
    )
