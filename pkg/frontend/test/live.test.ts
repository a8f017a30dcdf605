/**
 * Live conformance: the real client session talking to the reference
 * service over an actual websocket.
 *
 * The server is spawned from tools/live_server.py with a small model so a
 * full handshake/steer/reset/bye cycle runs in seconds.  Set SKIP_LIVE=1
 * to opt out (for example when python is unavailable).
 */

import { ChildProcess, spawn } from "node:child_process";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import WebSocket from "ws";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { decodeRawFrame } from "../src/render.js";
import { ClientSession, OrderedFrame, Transport } from "../src/session.js";

const TOOLS = join(dirname(fileURLToPath(import.meta.url)), "..", "tools");
const PORT = 8700 + (process.pid % 200);
const SKIP = process.env.SKIP_LIVE === "1";

let server: ChildProcess | null = null;

async function waitForHealth(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const res = await fetch(`http://127.0.0.1:${PORT}/healthz`);
      if (res.ok) {
        const body = (await res.json()) as { protocol?: string };
        expect(body.protocol).toBe("astra-proto/1");
        return;
      }
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("live server did not come up");
    await new Promise((r) => setTimeout(r, 250));
  }
}

function wsTransport(ws: WebSocket): Transport {
  return {
    send: (text) => ws.send(text),
    close: () => ws.close(),
  };
}

async function until(cond: () => boolean, what: string, timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!cond()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await new Promise((r) => setTimeout(r, 25));
  }
}

describe.skipIf(SKIP)("live reference server", () => {
  beforeAll(async () => {
    server = spawn("python3", [join(TOOLS, "live_server.py"), String(PORT)], {
      stdio: ["ignore", "inherit", "inherit"],
    });
    await waitForHealth(60000);
  }, 70000);

  afterAll(() => {
    server?.kill();
  });

  it("handshakes, steers, resets and closes over a real socket", async () => {
    const ws = new WebSocket(`ws://127.0.0.1:${PORT}/ws`);
    await new Promise<void>((resolve, reject) => {
      ws.once("open", () => resolve());
      ws.once("error", reject);
    });

    const frames: OrderedFrame[] = [];
    const errors: string[] = [];
    const session = new ClientSession(wsTransport(ws), {
      onFrame: (f) => frames.push(f),
      onServerError: (code) => errors.push(code),
    });
    ws.on("message", (data) => session.handleMessage(data.toString()));

    session.connect();
    await until(() => session.phase === "live", "welcome");
    expect(session.frameSize).toEqual([3, 8, 8]);
    expect(session.chunkFrames).toBe(2);
    expect(session.modalities).toEqual({ camera: 3 });

    session.start({ seed: 11, encoding: "raw", sampler: { steps: 2 } });
    await until(() => frames.length >= 1, "initial frame");
    expect(frames[0].chunk).toBe(-1);

    // one chunk worth of actions produces one ordered chunk of frames
    expect(session.sendAction("camera", [1, 0, 0])).toBeNull();
    expect(session.sendAction("camera", [0, 1, 0])).toBeNull();
    await until(() => frames.length >= 3, "first generated chunk");
    expect(frames.slice(1).map((f) => [f.chunk, f.frame])).toEqual([[0, 0], [0, 1]]);
    for (const f of frames) {
      const pix = decodeRawFrame(f.data, { channels: 3, height: 8, width: 8 });
      expect(pix.every((v) => Number.isFinite(v))).toBe(true);
    }
    expect(session.pending).toBe(0);

    // a malformed payload is reported but does not kill the session
    ws.send(JSON.stringify({
      type: "action", modality: "camera", payload: [1], client_seq: 99,
    }));
    await until(() => errors.length >= 1, "payload error");
    expect(errors).toEqual(["payload"]);
    expect(session.phase).toBe("live");

    // reset rewinds to a fresh initial frame with client_seq back at 1
    const before = frames.length;
    expect(session.reset()).toBeNull();
    await until(() => frames.length > before, "reset frame");
    expect(frames[before].chunk).toBe(-1);
    expect(session.nextClientSeq).toBe(1);

    session.bye();
    expect(session.phase).toBe("closed");
  }, 120000);

  it("reports a version error for an unknown protocol", async () => {
    const ws = new WebSocket(`ws://127.0.0.1:${PORT}/ws`);
    await new Promise<void>((resolve, reject) => {
      ws.once("open", () => resolve());
      ws.once("error", reject);
    });
    const replies: string[] = [];
    ws.on("message", (d) => replies.push(d.toString()));
    ws.send(JSON.stringify({ type: "hello", protocol: "astra-proto/0" }));
    await until(() => replies.length >= 1, "error reply");
    const msg = JSON.parse(replies[0]);
    expect(msg.type).toBe("error");
    expect(msg.code).toBe("version");
    ws.close();
  }, 30000);
});
