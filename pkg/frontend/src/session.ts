/**
 * Client session: connection state machine, sequence numbering, the
 * pending-action counter, and the frame reorder buffer.
 *
 * The session is transport agnostic so the same logic runs against the
 * live websocket, a mock transport, or a recorded transcript.
 */

import {
  ClientMessage,
  FrameMsg,
  MetricsMsg,
  PROTOCOL,
  ServerMessage,
  parseServerMessage,
  validateClientMessage,
} from "./protocol.js";

export type Phase = "idle" | "connecting" | "live" | "errored" | "closed";

export interface Transport {
  send(text: string): void;
  close(): void;
}

export interface OrderedFrame {
  chunk: number;
  frame: number;
  data: string;
}

export interface SessionEvents {
  onPhase?(phase: Phase, detail?: string): void;
  onFrame?(frame: OrderedFrame): void;
  onMetrics?(m: MetricsMsg): void;
  onServerError?(code: string, message: string): void;
  onPending?(pending: number, chunkFrames: number): void;
}

interface StartOptions {
  seed?: number;
  encoding?: "png" | "raw";
  sampler?: { steps?: number; guidance_scale?: number };
}

export class ClientSession {
  phase: Phase = "idle";
  phaseDetail = "";
  frameSize: [number, number, number] | null = null;
  chunkFrames = 0;
  modalities: Record<string, number> | null = null;
  pending = 0;
  lastMetrics: MetricsMsg | null = null;
  decodeFailures = 0;

  private clientSeq = 0;
  private lastServerSeq = 0;
  private nextChunk = -1;
  private nextFrame = 0;
  private held = new Map<string, FrameMsg>();
  private sent: ClientMessage[] = [];

  constructor(
    private transport: Transport,
    private events: SessionEvents = {},
  ) {}

  /** Every message the session has emitted, for tests and debugging. */
  get sentMessages(): readonly ClientMessage[] {
    return this.sent;
  }

  get nextClientSeq(): number {
    return this.clientSeq + 1;
  }

  private setPhase(phase: Phase, detail = ""): void {
    this.phase = phase;
    this.phaseDetail = detail;
    this.events.onPhase?.(phase, detail);
  }

  private send(msg: ClientMessage): string | null {
    const problem = validateClientMessage(msg, this.modalities);
    if (problem !== null) return problem;
    this.sent.push(msg);
    this.transport.send(JSON.stringify(msg));
    return null;
  }

  // -- outgoing ------------------------------------------------------

  connect(): void {
    if (this.phase !== "idle") {
      throw new Error(`connect is only valid from idle, not ${this.phase}`);
    }
    this.setPhase("connecting");
    this.send({ type: "hello", protocol: PROTOCOL });
  }

  start(opts: StartOptions = {}): void {
    if (this.phase !== "connecting" && this.phase !== "live") {
      throw new Error(`start requires a negotiated session (${this.phase})`);
    }
    this.nextChunk = -1;
    this.nextFrame = 0;
    this.held.clear();
    this.pending = 0;
    this.send({
      type: "start",
      seed: opts.seed ?? 0,
      encoding: opts.encoding ?? "png",
      ...(opts.sampler ? { sampler: opts.sampler } : {}),
    });
  }

  /** Emits one action with the next sequence number; returns an error
   *  string when the payload does not validate (nothing is sent then). */
  sendAction(modality: string, payload: number[]): string | null {
    if (this.phase !== "live") return `not live (${this.phase})`;
    const msg: ClientMessage = {
      type: "action",
      modality,
      payload,
      client_seq: this.clientSeq + 1,
    };
    const problem = this.send(msg);
    if (problem !== null) return problem;
    this.clientSeq += 1;
    this.pending += 1;
    this.events.onPending?.(this.pending, this.chunkFrames);
    return null;
  }

  setGuidance(s: number): string | null {
    if (this.phase !== "live") return `not live (${this.phase})`;
    return this.send({ type: "set_guidance", s });
  }

  reset(): string | null {
    if (this.phase !== "live") return `not live (${this.phase})`;
    this.nextChunk = -1;
    this.nextFrame = 0;
    this.held.clear();
    this.pending = 0;
    this.clientSeq = 0;
    return this.send({ type: "reset" });
  }

  bye(): void {
    if (this.phase === "live" || this.phase === "connecting") {
      this.send({ type: "bye" });
    }
    this.setPhase("closed");
    this.transport.close();
  }

  /** Transport-level failure (socket refused, dropped, ...). */
  transportError(detail: string): void {
    if (this.phase !== "closed") this.setPhase("errored", detail);
  }

  // -- incoming ------------------------------------------------------

  handleMessage(text: string): void {
    const msg = parseServerMessage(text);
    if (msg === null) {
      this.decodeFailures += 1;
      return;
    }
    if (msg.seq <= this.lastServerSeq) {
      // duplicated or replayed server message; protocol requires strictly
      // increasing numbering, so drop it
      this.decodeFailures += 1;
      return;
    }
    this.lastServerSeq = msg.seq;
    this.dispatch(msg);
  }

  private dispatch(msg: ServerMessage): void {
    switch (msg.type) {
      case "welcome":
        this.frameSize = msg.frame_size;
        this.chunkFrames = msg.chunk_frames;
        this.modalities = msg.modalities;
        this.setPhase("live");
        break;
      case "frame":
        this.enqueueFrame(msg);
        break;
      case "metrics":
        this.lastMetrics = msg;
        this.events.onMetrics?.(msg);
        break;
      case "error":
        this.events.onServerError?.(msg.code, msg.message);
        if (msg.code === "payload") break; // recoverable, session continues
        this.setPhase("errored", `${msg.code}: ${msg.message}`);
        break;
      case "bye":
        this.setPhase("closed");
        break;
    }
  }

  // -- reorder buffer --------------------------------------------------

  private enqueueFrame(msg: FrameMsg): void {
    if (this.phase !== "live") return;
    if (msg.chunk < this.nextChunk) return; // stale
    this.held.set(`${msg.chunk}:${msg.frame}`, msg);
    this.drainFrames();
  }

  private drainFrames(): void {
    for (;;) {
      const key = `${this.nextChunk}:${this.nextFrame}`;
      const msg = this.held.get(key);
      if (msg === undefined) return;
      this.held.delete(key);
      if (this.nextFrame === 0) {
        // chunk boundary: the buffered actions for this chunk are resolved
        this.pending = 0;
        this.events.onPending?.(this.pending, this.chunkFrames);
      }
      this.events.onFrame?.({ chunk: msg.chunk, frame: msg.frame, data: msg.data });
      this.nextFrame += 1;
      const frames = this.nextChunk === -1 ? 1 : this.chunkFrames;
      if (this.nextFrame >= frames) {
        this.nextChunk = this.nextChunk === -1 ? 0 : this.nextChunk + 1;
        this.nextFrame = 0;
      }
    }
  }
}
