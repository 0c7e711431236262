"""Throttled HTTP GET helper shared by the network providers."""

from __future__ import annotations

import time
from typing import Callable, Mapping

import requests

from .base import ProviderRejected, ProviderUnavailable, RateLimited


class HttpFetcher:
    """GET with a minimum interval between requests and one rate-limit retry.

    `get`, `sleep`, and `clock` are injectable for tests.
    """

    def __init__(
        self,
        provider: str,
        timeout: float = 10.0,
        min_interval: float = 0.0,
        get: Callable = None,
        sleep: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.provider = provider
        self.timeout = timeout
        self.min_interval = min_interval
        self._get = get or requests.get
        self._sleep = sleep
        self._clock = clock
        self._last_request = None

    def _throttle(self) -> None:
        if self._last_request is not None and self.min_interval > 0:
            wait = self._last_request + self.min_interval - self._clock()
            if wait > 0:
                self._sleep(wait)
        self._last_request = self._clock()

    def fetch(self, url: str, params: Mapping[str, str]) -> str:
        for attempt in (0, 1):
            self._throttle()
            try:
                resp = self._get(url, params=params, timeout=self.timeout)
            except requests.RequestException as exc:
                raise ProviderUnavailable(self.provider, str(exc)) from exc
            status = getattr(resp, "status_code", 200)
            if status == 429:
                retry_after = _parse_retry_after(getattr(resp, "headers", {}))
                if attempt == 0:
                    self._sleep(retry_after)
                    continue
                raise RateLimited(self.provider, "rate limited", retry_after=retry_after)
            if status >= 400:
                raise ProviderRejected(self.provider, f"HTTP {status}")
            return resp.text
        raise ProviderRejected(self.provider, "unreachable")  # pragma: no cover


def _parse_retry_after(headers) -> float:
    try:
        return max(0.0, float(headers.get("Retry-After", "1")))
    except (TypeError, ValueError):
        return 1.0
