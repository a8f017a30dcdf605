"""Record golden protocol transcripts from the reference session service.

Each transcript is a list of {"dir": "send"|"recv", "msg": {...}} steps,
captured by running scripted client scenarios directly against the
transport-independent session handler.  Rerunning this script must be a
no-op diff; the reference service is fully deterministic.

Usage: python3 record_golden.py [outdir]
"""

import json
import pathlib
import sys

from common import make_service

from flowworld.server import PROTOCOL


class Recorder:
    def __init__(self):
        self.service = make_service()
        self.handler = self.service.open_session()
        self.steps = []

    def send(self, msg):
        self.steps.append({"dir": "send", "msg": msg})
        for reply in self.handler.handle(json.dumps(msg)):
            self.steps.append({"dir": "recv", "msg": reply})


def scenario_handshake():
    r = Recorder()
    r.send({"type": "hello", "protocol": PROTOCOL})
    return r.steps


def scenario_version_mismatch():
    r = Recorder()
    r.send({"type": "hello", "protocol": "astra-proto/0"})
    return r.steps


def scenario_camera_session():
    r = Recorder()
    r.send({"type": "hello", "protocol": PROTOCOL})
    r.send({"type": "start", "seed": 9, "encoding": "raw",
            "sampler": {"steps": 2}})
    r.send({"type": "action", "modality": "camera", "payload": [1.0, 0.0, 0.0],
            "client_seq": 1})
    r.send({"type": "action", "modality": "camera", "payload": [0.0, 1.0, 0.0],
            "client_seq": 2})
    r.send({"type": "set_guidance", "s": 1.0})
    r.send({"type": "action", "modality": "camera", "payload": [-1.0, 0.0, 0.0],
            "client_seq": 3})
    r.send({"type": "action", "modality": "camera", "payload": [0.0, -1.0, 0.0],
            "client_seq": 4})
    r.send({"type": "reset"})
    r.send({"type": "bye"})
    return r.steps


def scenario_recovery():
    r = Recorder()
    r.send({"type": "hello", "protocol": PROTOCOL})
    r.send({"type": "start", "seed": 3, "encoding": "raw"})
    # wrong payload length: payload error, session continues
    r.send({"type": "action", "modality": "camera", "payload": [1.0],
            "client_seq": 1})
    r.send({"type": "action", "modality": "camera", "payload": [1.0, 0.0, 0.0],
            "client_seq": 2})
    # out-of-order sequence number: sequence error, session closed
    r.send({"type": "action", "modality": "camera", "payload": [1.0, 0.0, 0.0],
            "client_seq": 2})
    return r.steps


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else
                          pathlib.Path(__file__).parent.parent / "test" / "golden")
    outdir.mkdir(parents=True, exist_ok=True)
    scenarios = {
        "handshake": scenario_handshake,
        "version-mismatch": scenario_version_mismatch,
        "camera-session": scenario_camera_session,
        "recovery": scenario_recovery,
    }
    for name, fn in scenarios.items():
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(fn(), indent=1) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
