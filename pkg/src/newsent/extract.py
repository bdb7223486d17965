"""Fetch article pages over HTTP and reduce HTML to plain text.

This is deliberately generic: there are no site-specific selectors.  Corpus
files are expected to be assembled offline, with :func:`fetch_url` and
:func:`strip_html` as the building blocks.
"""

from __future__ import annotations

import re
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Callable
from urllib.parse import urlsplit

__all__ = [
    "FetchPolicy",
    "FetchError",
    "NetworkError",
    "HTTPStatusError",
    "FetchTimeout",
    "HostThrottle",
    "fetch_url",
    "strip_html",
]


@dataclass(frozen=True)
class FetchPolicy:
    min_delay_ms: int = 1000
    timeout_ms: int = 10_000
    user_agent: str = "newsent/0.1"

    def __post_init__(self) -> None:
        if self.min_delay_ms < 0:
            raise ValueError("min_delay_ms must be >= 0")
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be > 0")


class FetchError(Exception):
    def __init__(self, url: str, message: str):
        super().__init__(f"{url}: {message}")
        self.url = url


class NetworkError(FetchError):
    pass


class HTTPStatusError(FetchError):
    def __init__(self, url: str, status: int):
        super().__init__(url, f"HTTP {status}")
        self.status = status


class FetchTimeout(FetchError):
    pass


class HostThrottle:
    """Enforces a minimum gap between the end of one request to a host and
    the start of the next.  Requests to one host are serialized."""

    def __init__(self, clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        self._clock = clock
        self._sleep = sleep
        self._guard = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._last_done: dict[str, float] = {}

    def _lock_for(self, host: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(host, threading.Lock())

    def run(self, host: str, min_delay_s: float, fn):
        with self._lock_for(host):
            last = self._last_done.get(host)
            if last is not None:
                wait = last + min_delay_s - self._clock()
                if wait > 0:
                    self._sleep(wait)
            try:
                return fn()
            finally:
                self._last_done[host] = self._clock()


_default_throttle = HostThrottle()


def fetch_url(url: str, policy: FetchPolicy | None = None,
              throttle: HostThrottle | None = None) -> tuple[bytes, str | None]:
    """GET ``url`` and return ``(body, content_type)`` for a 2xx response.

    Raises :class:`HTTPStatusError` for non-2xx replies,
    :class:`FetchTimeout` when ``policy.timeout_ms`` elapses and
    :class:`NetworkError` for anything else that prevents a response.
    """
    policy = policy or FetchPolicy()
    throttle = throttle or _default_throttle
    parts = urlsplit(url)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise ValueError(f"not an absolute http(s) URL: {url!r}")
    req = urllib.request.Request(url, headers={"User-Agent": policy.user_agent}, method="GET")

    def _do():
        try:
            with urllib.request.urlopen(req, timeout=policy.timeout_ms / 1000) as resp:
                status = resp.status
                body = resp.read()
                ctype = resp.headers.get("Content-Type")
        except urllib.error.HTTPError as exc:
            raise HTTPStatusError(url, exc.code) from None
        except TimeoutError:
            raise FetchTimeout(url, f"timed out after {policy.timeout_ms} ms") from None
        except urllib.error.URLError as exc:
            if isinstance(exc.reason, TimeoutError):
                raise FetchTimeout(url, f"timed out after {policy.timeout_ms} ms") from None
            raise NetworkError(url, str(exc.reason)) from None
        except OSError as exc:
            raise NetworkError(url, str(exc)) from None
        if not 200 <= status < 300:
            raise HTTPStatusError(url, status)
        return body, ctype

    return throttle.run(parts.netloc.lower(), policy.min_delay_ms / 1000, _do)


_DROP_BLOCKS = re.compile(r"<(script|style)\b[^>]*>.*?(?:</\1\s*>|\Z)", re.I | re.S)
_COMMENT = re.compile(r"<!--.*?(?:-->|\Z)", re.S)
# A tag opens with '<' followed by a letter, '/', '!' or '?'; a bare '<'
# (as in "a < b") is text.  Unterminated tags run to the end of input.
_TAG = re.compile(r"<[A-Za-z/!?][^>]*(?:>|\Z)")
_ENTITIES = {"&amp;": "&", "&lt;": "<", "&gt;": ">", "&quot;": '"', "&#39;": "'"}
_ENTITY = re.compile("|".join(map(re.escape, _ENTITIES)))


def strip_html(html: str) -> str:
    """Collapse an HTML page to its visible text.

    Script and style contents, comments and tags are removed; the five
    basic entities are decoded (others are left as written) and whitespace
    runs become single spaces.

    >>> strip_html("<p>Alkem <b>plunged</b> 11%</p>")
    'Alkem plunged 11%'
    """
    text = _COMMENT.sub(" ", html)
    text = _DROP_BLOCKS.sub(" ", text)
    # Inline tags like <b> must not split words, block tags should.
    text = _TAG.sub(_tag_replacement, text)
    text = _ENTITY.sub(lambda m: _ENTITIES[m.group(0)], text)
    return " ".join(text.split())


_INLINE = frozenset("a abbr b bdi bdo cite code data dfn em font i kbd mark q s samp small span strong sub sup time u var".split())


def _tag_replacement(m: re.Match) -> str:
    name = re.match(r"</?\s*([A-Za-z][A-Za-z0-9]*)", m.group(0))
    if name and name.group(1).lower() in _INLINE:
        return ""
    return " "
