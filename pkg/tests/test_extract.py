import socket
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newsent.extract import (
    FetchPolicy,
    FetchTimeout,
    HostThrottle,
    HTTPStatusError,
    NetworkError,
    fetch_url,
    strip_html,
)


class _Handler(BaseHTTPRequestHandler):
    arrivals: list = []

    def do_GET(self):
        type(self).arrivals.append((self.path, time.monotonic(), self.headers.get("User-Agent")))
        if self.path == "/missing":
            self.send_error(404)
            return
        if self.path == "/slow":
            time.sleep(0.5)
        body = b"ok"
        self.send_response(200)
        self.send_header("Content-Type", "text/plain; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


class _QuietServer(ThreadingHTTPServer):
    def handle_error(self, request, client_address):
        pass  # clients that time out hang up mid-response


@pytest.fixture
def server():
    _Handler.arrivals = []
    httpd = _QuietServer(("127.0.0.1", 0), _Handler)
    t = threading.Thread(target=httpd.serve_forever, daemon=True)
    t.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()
    httpd.server_close()


FAST = FetchPolicy(min_delay_ms=0, timeout_ms=2000, user_agent="newsent-test")


def test_fetch_ok(server):
    body, ctype = fetch_url(server + "/page", FAST, HostThrottle())
    assert body == b"ok"
    assert ctype.startswith("text/plain")
    assert _Handler.arrivals[0][2] == "newsent-test"


def test_fetch_404(server):
    with pytest.raises(HTTPStatusError) as info:
        fetch_url(server + "/missing", FAST, HostThrottle())
    assert info.value.status == 404
    assert "/missing" in str(info.value)


def test_fetch_timeout(server):
    with pytest.raises(FetchTimeout) as info:
        fetch_url(server + "/slow", FetchPolicy(0, 100), HostThrottle())
    assert info.value.url.endswith("/slow")


def test_fetch_network_error():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    with pytest.raises(NetworkError) as info:
        fetch_url(f"http://127.0.0.1:{port}/x", FAST, HostThrottle())
    assert str(port) in info.value.url


@pytest.mark.parametrize("url", ["ftp://host/x", "/relative", "http://"])
def test_fetch_rejects_non_http(url):
    with pytest.raises(ValueError):
        fetch_url(url, FAST)


def test_policy_validation():
    with pytest.raises(ValueError):
        FetchPolicy(timeout_ms=0)
    with pytest.raises(ValueError):
        FetchPolicy(min_delay_ms=-1)


class FakeClock:
    def __init__(self):
        self.now = 0.0

    def __call__(self):
        return self.now

    def sleep(self, s):
        self.now += s


def test_throttle_with_test_clock():
    clock = FakeClock()
    throttle = HostThrottle(clock=clock, sleep=clock.sleep)
    starts, ends = [], []

    def request():
        starts.append(clock.now)
        clock.now += 0.03  # request duration
        ends.append(clock.now)

    throttle.run("h", 0.1, request)
    throttle.run("h", 0.1, request)
    throttle.run("other", 0.1, request)
    assert starts[1] - ends[0] >= 0.1 - 1e-12
    assert starts[2] == ends[1]  # other host not delayed


def test_fetch_rate_limit_real_time(server):
    throttle = HostThrottle()
    policy = FetchPolicy(min_delay_ms=100, timeout_ms=2000)
    fetch_url(server + "/a", policy, throttle)
    first_done = time.monotonic()
    fetch_url(server + "/b", policy, throttle)
    second_arrival = _Handler.arrivals[-1][1]
    assert second_arrival - first_done >= 0.1


# -- strip_html ----------------------------------------------------------------

@pytest.mark.parametrize(
    "html, text",
    [
        ("<p>Alkem <b>plunged</b> 11%</p>", "Alkem plunged 11%"),
        ("<script>x()</script>News", "News"),
        ("costs &amp; revenues", "costs & revenues"),
        ("&lt;&gt;&quot;&#39;", "<>\"'"),
        ("&nbsp;&copy;", "&nbsp;&copy;"),
        ("<style type='text/css'>p{}</style><div>a</div><div>b</div>", "a b"),
        ("<!-- hidden --><p>seen</p>", "seen"),
        ("a < b and c > d", "a < b and c > d"),
        ("<p>unterminated <b", "unterminated"),
        ("<SCRIPT>var s='</p>';</SCRIPT>ok", "ok"),
        ("", ""),
    ],
)
def test_strip_html(html, text):
    assert strip_html(html) == text


words = st.text(alphabet="abcXYZ019 .,%\n\t", max_size=8)
tags = st.sampled_from(["<p>", "</p>", "<b>", "</b>", "<br/>", "<div class='x'>", "<a href=\"u\">",
                        "<script>bad()</script>", "<style>x{}</style>", "<!-- c -->"])
safe_entities = st.sampled_from(["&quot;", "&#39;", "&gt;", "&nbsp;"])
documents = st.lists(st.one_of(words, tags, safe_entities), max_size=20).map("".join)


@given(documents)
def test_strip_html_idempotent(doc):
    once = strip_html(doc)
    assert strip_html(once) == once


@given(documents)
def test_strip_html_no_tags_or_new_characters(doc):
    out = strip_html(doc)
    assert "<" not in out  # no '<' in these documents' text or entities
    allowed = set(doc) | set("&<>\"'") | {" "}
    assert set(out) <= allowed
    for bad in ("bad()", "x{}"):
        assert bad not in out
