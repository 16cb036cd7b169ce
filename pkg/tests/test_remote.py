import json
import random
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from bident.scoring import ScorerError, build_scorer
from bident.scoring.remote import TOKEN_ENV, remote_scorer


class StubHandler(BaseHTTPRequestHandler):
    behavior = "fixed"          # fixed | echo | fail
    request_count = 0
    seen_auth: list = []
    lock = threading.Lock()

    def log_message(self, *args):
        pass

    def do_POST(self):
        with StubHandler.lock:
            StubHandler.request_count += 1
        StubHandler.seen_auth.append(self.headers.get("Authorization"))
        length = int(self.headers["Content-Length"])
        body = json.loads(self.rfile.read(length))

        if StubHandler.behavior == "fail":
            self.send_response(500)
            self.end_headers()
            self.wfile.write(b"boom")
            return

        if StubHandler.behavior == "echo":
            # response derived from pair content; random delay shuffles
            # completion order across concurrent batches
            time.sleep(random.random() * 0.05)
            dists = []
            for pair in body["pairs"]:
                i = int(pair["s1"].split()[-1])
                e = (i % 50) / 100
                dists.append({"entailment": e, "neutral": 0.9 - e,
                              "contradiction": 0.1})
        else:
            dists = [{"entailment": 0.2, "neutral": 0.5, "contradiction": 0.3}
                     for _ in body["pairs"]]
        payload = json.dumps({"distributions": dists}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)


@pytest.fixture
def stub_server():
    StubHandler.behavior = "fixed"
    StubHandler.request_count = 0
    StubHandler.seen_auth = []
    server = ThreadingHTTPServer(("127.0.0.1", 0), StubHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}"
    server.shutdown()


def make_scorer(url):
    return remote_scorer("nli-3way", url, backoff=0.01, timeout=5)


class TestRemoteScorer:
    def test_fixed_distribution_for_every_pair(self, stub_server):
        scorer = make_scorer(stub_server)
        dists = scorer.score_batch([("a", "b"), ("c", "d")])
        for dist in dists:
            assert dist.probabilities == {"entailment": 0.2, "neutral": 0.5,
                                          "contradiction": 0.3}

    def test_index_alignment_under_shuffled_timing(self, stub_server):
        StubHandler.behavior = "echo"
        scorer = make_scorer(stub_server)
        scorer.batch_size = 4
        pairs = [(f"premise {i}", f"hypothesis {i}") for i in range(40)]
        dists = scorer.score_batch(pairs, workers=6)
        for i, dist in enumerate(dists):
            assert dist.prob("entailment") == pytest.approx((i % 50) / 100)

    def test_three_retries_then_fail(self, stub_server):
        StubHandler.behavior = "fail"
        scorer = make_scorer(stub_server)
        with pytest.raises(ScorerError, match="3 attempts") as excinfo:
            scorer.score_batch([("a", "b")])
        assert StubHandler.request_count == 3
        assert excinfo.value.first_unscored_index == 0

    def test_failure_carries_first_unscored_index(self, stub_server):
        StubHandler.behavior = "fail"
        scorer = make_scorer(stub_server)
        scorer.batch_size = 2
        with pytest.raises(ScorerError) as excinfo:
            scorer.score_batch([("a", str(i)) for i in range(6)], workers=3)
        assert excinfo.value.first_unscored_index == 0

    def test_bearer_token_header(self, stub_server, monkeypatch):
        monkeypatch.setenv(TOKEN_ENV, "sekrit")
        scorer = make_scorer(stub_server)
        scorer.score_batch([("a", "b")])
        assert "Bearer sekrit" in StubHandler.seen_auth

    def test_build_scorer_spec(self, stub_server):
        scorer = build_scorer(f"remote:{stub_server}", "nli-3way")
        assert scorer.base_url == stub_server

    def test_connection_refused(self):
        scorer = remote_scorer("nli-3way", "http://127.0.0.1:1", backoff=0.01,
                               timeout=0.5)
        with pytest.raises(ScorerError):
            scorer.score_batch([("a", "b")])
