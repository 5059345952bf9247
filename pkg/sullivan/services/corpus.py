"""Built-in corpus of model files shipped in sullivan/corpus."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Tuple

from sullivan.core.config import Settings, get_settings
from sullivan.core.errors import UnknownModel
from sullivan.models.report import Report
from sullivan.services.parser import load_model
from sullivan.services.report import build_report
from sullivan.services.sullivan_model import SullivanModel

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
SUFFIX = ".sullivan"


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    path: Path
    description: str
    tags: Tuple[str, ...]

    def source(self) -> str:
        return self.path.read_text(encoding="utf-8")

    def model(self) -> SullivanModel:
        return load_model(self.source(), provenance=f"corpus:{self.id}", name=self.id)


def _header(text: str) -> Tuple[str, Tuple[str, ...]]:
    """Description from the first comment line, tags from a `# tags:` line."""

    description = ""
    tags: Tuple[str, ...] = ()
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped.startswith("#"):
            continue
        body = stripped.lstrip("#").strip()
        if body.startswith("tags:"):
            tags = tuple(t.strip() for t in body[len("tags:"):].split(",") if t.strip())
        elif not description:
            description = body
    return description, tags


@lru_cache(maxsize=1)
def corpus_entries() -> Tuple[CorpusEntry, ...]:
    entries = []
    for path in sorted(CORPUS_DIR.glob(f"*{SUFFIX}")):
        description, tags = _header(path.read_text(encoding="utf-8"))
        entries.append(CorpusEntry(path.name[: -len(SUFFIX)], path, description, tags))
    return tuple(entries)


def corpus_entry(entry_id: str) -> CorpusEntry:
    for entry in corpus_entries():
        if entry.id == entry_id:
            return entry
    raise UnknownModel(entry_id)


def filter_entries(tag: Optional[str] = None) -> List[CorpusEntry]:
    return [entry for entry in corpus_entries() if tag is None or tag in entry.tags]


def corpus_model(entry_id: str) -> SullivanModel:
    return corpus_entry(entry_id).model()


def _report_for(entry_id: str) -> Report:
    entry = corpus_entry(entry_id)
    return build_report(entry.model(), source=f"corpus:{entry.id}", tags=entry.tags)


def run_corpus(entries: List[CorpusEntry], jobs: Optional[int] = None, settings: Optional[Settings] = None) -> List[Report]:
    """Full reports for ``entries``, in order; worker processes when jobs > 1."""

    settings = settings or get_settings()
    jobs = jobs or settings.corpus_jobs
    ids = [entry.id for entry in entries]
    if jobs <= 1 or len(ids) <= 1:
        return [_report_for(entry_id) for entry_id in ids]
    logger.debug("running %d corpus models on %d workers", len(ids), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_report_for, ids))
