"""Remote inference-service backend.

Protocol: POST <base_url>/score with {"pairs": [{"s1", "s2"}], "task": ...};
response {"distributions": [{class: prob}, ...]}. Non-200 is an error.
Failed requests are retried with exponential backoff, 3 attempts total.
"""
from __future__ import annotations

import os
import time

import requests

from .base import Scorer, ScorerDescriptor, ScorerError

TOKEN_ENV = "BIDENT_REMOTE_TOKEN"


class RemoteScorer(Scorer):
    max_attempts = 3

    def __init__(self, descriptor: ScorerDescriptor, base_url: str,
                 timeout: float = 30.0, backoff: float = 0.5,
                 renormalize: bool = False, session=None):
        super().__init__(descriptor, renormalize=renormalize)
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.backoff = backoff
        self.session = session or requests.Session()

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(TOKEN_ENV)
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def _score(self, pairs):
        body = {
            "pairs": [{"s1": s1, "s2": s2} for s1, s2 in pairs],
            "task": self.descriptor.task,
        }
        last_error = None
        for attempt in range(self.max_attempts):
            if attempt:
                time.sleep(self.backoff * (2 ** (attempt - 1)))
            try:
                resp = self.session.post(f"{self.base_url}/score", json=body,
                                         headers=self._headers(), timeout=self.timeout)
                if resp.status_code != 200:
                    last_error = f"HTTP {resp.status_code}: {resp.text[:200]}"
                    continue
                payload = resp.json()
                return [dict(d) for d in payload["distributions"]]
            except (requests.RequestException, ValueError, KeyError) as exc:
                last_error = str(exc)
        raise ScorerError(
            f"remote backend failed after {self.max_attempts} attempts: {last_error}")


def remote_scorer(task: str, url: str, **kwargs) -> RemoteScorer:
    descriptor = ScorerDescriptor(task=task, backend="remote", model_id=url)
    return RemoteScorer(descriptor, base_url=url, **kwargs)
