"""Peer candidate providers for the semantic strategy.

Two modes: a static map that replays curated peer sets unanimously, and an
external language-model endpoint reached over HTTP. Responses are normalized
to dataset ids (country names to ISO-3166 codes, company names to tickers)
via a bundled alias table, and every external exchange can be persisted as a
transcript for deterministic replay.
"""
from __future__ import annotations

import json
import logging
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

import httpx

from .errors import ProviderError
from .resources import data_path

log = logging.getLogger(__name__)

MAX_ENTITIES_PER_LIST = 5

_LIST_PREFIX = re.compile(r"^\s*(?:\d+[.)]\s*|[-*•]\s*)")


@dataclass(frozen=True)
class PeerCandidateList:
    """One sampled list of proposed peers, normalized to dataset ids."""

    focal_id: str
    entities: tuple[str, ...]
    source: str  # static | external | transcript
    raw_response: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "entities", tuple(self.entities))
        if len(set(self.entities)) != len(self.entities):
            raise ProviderError(f"candidate list for {self.focal_id!r} has duplicates")
        if self.focal_id in self.entities:
            raise ProviderError(f"candidate list for {self.focal_id!r} contains the focal item")


@dataclass(frozen=True)
class RetryPolicy:
    max_attempts: int = 3
    backoff: float = 0.0  # seconds between attempts; keep 0 to bound total wait


@dataclass(frozen=True)
class PeerProviderConfig:
    mode: str = "static"
    static_map_path: Path | None = None
    endpoint: str | None = None
    prompt_template_id: str = "covid"
    samples: int = 10
    timeout: float = 30.0
    retry: RetryPolicy = field(default_factory=RetryPolicy)

    def __post_init__(self) -> None:
        if self.mode not in ("static", "external"):
            raise ProviderError(f"unknown provider mode {self.mode!r}")
        if self.mode == "external" and not self.endpoint:
            raise ProviderError("external mode requires an endpoint")
        if self.mode == "static" and self.static_map_path is None:
            object.__setattr__(self, "static_map_path", data_path("peer_sets.json"))


# -- normalization ---------------------------------------------------------------


def load_aliases(path: str | Path | None = None) -> dict[str, str]:
    """Alias table mapping lowercase names/ids to normalized ids."""
    source = Path(path) if path else data_path("aliases.json")
    table = json.loads(source.read_text("utf-8"))
    aliases = {alias.lower(): norm for alias, norm in table.items()}
    for norm in set(table.values()):
        aliases.setdefault(norm.lower(), norm)
    return aliases


def parse_peer_response(
    text: str,
    aliases: Mapping[str, str],
    focal_id: str,
    max_entities: int = MAX_ENTITIES_PER_LIST,
) -> tuple[str, ...]:
    """Extract normalized entity ids from free-form model output.

    Accepts comma/newline/numbered-list formats; unknown names are dropped
    and logged; output is truncated to max_entities.
    """
    entities: list[str] = []
    for chunk in re.split(r"[,\n;]+", text):
        token = _LIST_PREFIX.sub("", chunk).strip().strip("\"'.")
        if not token:
            continue
        normalized = aliases.get(token.lower())
        if normalized is None:
            log.info("dropping unrecognized entity %r for focal %s", token, focal_id)
            continue
        if normalized == focal_id or normalized in entities:
            continue
        entities.append(normalized)
    if len(entities) > max_entities:
        log.info(
            "truncating %d parsed entities to %d for focal %s",
            len(entities),
            max_entities,
            focal_id,
        )
        entities = entities[:max_entities]
    return tuple(entities)


# -- providers -------------------------------------------------------------------


class StaticPeerProvider:
    """Replays a curated focal -> peers map as m unanimous candidate lists."""

    def __init__(self, config: PeerProviderConfig | None = None, peer_map: Mapping[str, Sequence[str]] | None = None):
        self.config = config or PeerProviderConfig(mode="static")
        if peer_map is not None:
            self._map = {k: tuple(v) for k, v in peer_map.items()}
        else:
            raw = json.loads(Path(self.config.static_map_path).read_text("utf-8"))
            self._map = {k: tuple(v) for k, v in raw.items()}

    @property
    def known_focals(self) -> tuple[str, ...]:
        return tuple(sorted(self._map))

    def sample_lists(self, focal_id: str, m: int) -> list[PeerCandidateList]:
        if focal_id not in self._map:
            raise ProviderError(
                f"no static peer set for {focal_id!r}; known focals: "
                f"{', '.join(self.known_focals)}"
            )
        peers = self._map[focal_id]
        return [
            PeerCandidateList(focal_id=focal_id, entities=peers, source="static")
            for _ in range(m)
        ]


@dataclass(frozen=True)
class TranscriptEntry:
    request_index: int
    prompt: str
    raw_response: str
    parsed_ids: tuple[str, ...]

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "request_index": self.request_index,
            "prompt": self.prompt,
            "raw_response": self.raw_response,
            "parsed_ids": list(self.parsed_ids),
        }


def save_transcript(entries: Sequence[TranscriptEntry], path: str | Path) -> None:
    Path(path).write_text(
        json.dumps([e.to_json_obj() for e in entries], indent=2, ensure_ascii=False),
        "utf-8",
    )


def load_transcript(path: str | Path) -> list[TranscriptEntry]:
    raw = json.loads(Path(path).read_text("utf-8"))
    return [
        TranscriptEntry(
            request_index=e["request_index"],
            prompt=e["prompt"],
            raw_response=e["raw_response"],
            parsed_ids=tuple(e["parsed_ids"]),
        )
        for e in raw
    ]


def load_prompt_template(template_id: str) -> str:
    templates = json.loads(data_path("prompts.json").read_text("utf-8"))
    if template_id not in templates:
        raise ProviderError(
            f"unknown prompt template {template_id!r}; available: {sorted(templates)}"
        )
    return templates[template_id]


class ExternalPeerProvider:
    """Queries a language-model HTTP endpoint for peer candidate lists.

    Wire contract: POST endpoint with JSON {"prompt": ...}, response JSON
    {"text": ...}. The adapter keeps any vendor specifics out of the engine.
    Requests are order-stamped so output is deterministic given a transcript.
    """

    def __init__(
        self,
        config: PeerProviderConfig,
        aliases: Mapping[str, str] | None = None,
        transport: httpx.BaseTransport | None = None,
    ):
        if config.mode != "external":
            raise ProviderError("ExternalPeerProvider requires mode='external'")
        self.config = config
        self.aliases = dict(aliases) if aliases is not None else load_aliases()
        self._transport = transport
        self.last_transcript: list[TranscriptEntry] = []

    def _post_once(self, client: httpx.Client, prompt: str) -> str:
        response = client.post(self.config.endpoint, json={"prompt": prompt})
        response.raise_for_status()
        body = response.json()
        if "text" not in body:
            raise ProviderError("endpoint response missing 'text' field")
        return str(body["text"])

    def _post(self, client: httpx.Client, prompt: str) -> str:
        last_error: Exception | None = None
        for attempt in range(self.config.retry.max_attempts):
            try:
                return self._post_once(client, prompt)
            except (httpx.HTTPError, ProviderError, ValueError) as exc:
                last_error = exc
                if attempt + 1 < self.config.retry.max_attempts and self.config.retry.backoff:
                    time.sleep(self.config.retry.backoff * (attempt + 1))
        raise ProviderError(
            f"endpoint {self.config.endpoint} failed after "
            f"{self.config.retry.max_attempts} attempts: {last_error}"
        )

    def sample_lists(
        self, focal_id: str, m: int, task_context: str = ""
    ) -> list[PeerCandidateList]:
        template = load_prompt_template(self.config.prompt_template_id)
        display = self.aliases.get(focal_id.lower(), focal_id)
        prompt = template.format(focal=display, task=task_context or "general comparison")
        transcript: list[TranscriptEntry] = []
        lists: list[PeerCandidateList] = []
        with httpx.Client(timeout=self.config.timeout, transport=self._transport) as client:
            for index in range(m):
                raw = self._post(client, prompt)
                parsed = parse_peer_response(raw, self.aliases, focal_id)
                transcript.append(
                    TranscriptEntry(
                        request_index=index, prompt=prompt, raw_response=raw, parsed_ids=parsed
                    )
                )
                if parsed:
                    lists.append(
                        PeerCandidateList(
                            focal_id=focal_id,
                            entities=parsed,
                            source="external",
                            raw_response=raw,
                        )
                    )
        self.last_transcript = transcript
        required = (m + 1) // 2
        if len(lists) < required:
            raise ProviderError(
                f"only {len(lists)} of {m} responses parsed to candidate lists "
                f"(need {required}); transcripts: "
                + json.dumps([e.to_json_obj() for e in transcript])
            )
        return lists


class TranscriptPeerProvider:
    """Replays a saved transcript; re-parses raw responses deterministically."""

    def __init__(self, transcript: Sequence[TranscriptEntry], focal_id: str, aliases: Mapping[str, str] | None = None):
        self.entries = list(transcript)
        self.focal_id = focal_id
        self.aliases = dict(aliases) if aliases is not None else load_aliases()

    def sample_lists(self, focal_id: str, m: int) -> list[PeerCandidateList]:
        if focal_id != self.focal_id:
            raise ProviderError(
                f"transcript was recorded for {self.focal_id!r}, not {focal_id!r}"
            )
        lists = []
        for entry in self.entries[:m]:
            parsed = parse_peer_response(entry.raw_response, self.aliases, focal_id)
            if parsed:
                lists.append(
                    PeerCandidateList(
                        focal_id=focal_id,
                        entities=parsed,
                        source="transcript",
                        raw_response=entry.raw_response,
                    )
                )
        if not lists:
            raise ProviderError("transcript replay produced no candidate lists")
        return lists
