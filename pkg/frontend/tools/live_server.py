"""Run the reference session service on a local port for live client
conformance tests.

Usage: python3 live_server.py [port]
"""

import sys

import uvicorn

from common import tiny_train_state

from flowworld.rollout import SamplerConfig
from flowworld.server import ServiceConfig, build_app


def main():
    port = int(sys.argv[1]) if len(sys.argv) > 1 else 8787
    cfg = ServiceConfig(checkpoint_path="unused", port=port,
                        sampler=SamplerConfig(steps=2))
    app = build_app(cfg, tiny_train_state())
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


if __name__ == "__main__":
    main()
