"""HTTP client for a remote similarity/fluency scoring service.

Protocol: POST /similarity {"hypothesis": str, "references": [str]} ->
{"score": number}; POST /fluency {"sentence": str} -> {"error_probability":
number}; GET /healthz -> 200. Timeouts, connection failures, non-200 statuses,
and malformed responses all raise BackendError.
"""

from __future__ import annotations

from typing import Sequence

import requests

from ..errors import BackendError


class RemoteScorerBackend:
    """SimilarityBackend + FluencyBackend talking to a scorer service."""

    def __init__(self, base_url: str, timeout: float = 10.0, session=None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._session = session or requests.Session()

    def _post(self, endpoint: str, payload: dict, field: str) -> float:
        url = f"{self.base_url}{endpoint}"
        try:
            response = self._session.post(url, json=payload, timeout=self.timeout)
        except requests.RequestException as exc:
            raise BackendError(f"{url}: request failed: {exc}") from exc
        if response.status_code != 200:
            raise BackendError(f"{url}: backend returned status {response.status_code}")
        try:
            body = response.json()
        except ValueError as exc:
            raise BackendError(f"{url}: response is not valid JSON") from exc
        value = body.get(field) if isinstance(body, dict) else None
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise BackendError(f"{url}: response missing numeric field {field!r}")
        return float(value)

    def similarity(self, hypothesis: str, references: Sequence[str]) -> float:
        return self._post(
            "/similarity",
            {"hypothesis": hypothesis, "references": list(references)},
            "score",
        )

    def error_probability(self, sentence: str) -> float:
        return self._post("/fluency", {"sentence": sentence}, "error_probability")

    def check_health(self) -> None:
        url = f"{self.base_url}/healthz"
        try:
            response = self._session.get(url, timeout=self.timeout)
        except requests.RequestException as exc:
            raise BackendError(f"{url}: health check failed: {exc}") from exc
        if response.status_code != 200:
            raise BackendError(f"{url}: health check returned status {response.status_code}")
