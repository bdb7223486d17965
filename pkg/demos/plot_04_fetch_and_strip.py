"""
Fetching a page and reducing it to text
=======================================

``fetch_url`` is a plain HTTP GET with a per-host minimum delay;
``strip_html`` drops scripts, styles and tags and decodes the basic
entities.  A local server stands in for a news site here.
"""

import threading
import time
from http.server import BaseHTTPRequestHandler, HTTPServer

from newsent.extract import FetchPolicy, HTTPStatusError, HostThrottle, fetch_url, strip_html

PAGE = b"""<html><head><style>p {color: red}</style>
<script>trackVisitor();</script></head>
<body><h1>Alkem shares plunge</h1>
<p>The US health regulator issued <b>13 observations</b> on the Daman plant &amp; the
stock fell as much as 11%.</p><!-- ad slot --></body></html>"""


class Handler(BaseHTTPRequestHandler):
    def do_GET(self):
        if self.path != "/alkem":
            self.send_error(404)
            return
        self.send_response(200)
        self.send_header("Content-Type", "text/html; charset=utf-8")
        self.end_headers()
        self.wfile.write(PAGE)

    def log_message(self, *args):
        pass


server = HTTPServer(("127.0.0.1", 0), Handler)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}"

policy = FetchPolicy(min_delay_ms=200, timeout_ms=2000, user_agent="newsent-demo")
throttle = HostThrottle()

body, ctype = fetch_url(base + "/alkem", policy, throttle)
print(ctype)
print(strip_html(body.decode("utf-8")))

###############################################################################
# The second request to the same host waits out the minimum delay, and
# error statuses surface as exceptions carrying the code.

t0 = time.monotonic()
try:
    fetch_url(base + "/missing", policy, throttle)
except HTTPStatusError as exc:
    print(exc, "after", round(time.monotonic() - t0, 2), "s")

server.shutdown()
