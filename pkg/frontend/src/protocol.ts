/**
 * astra-proto/1 message schema and validation.
 *
 * The client is a strict protocol participant: every outgoing message is
 * validated against the negotiated configuration before it is sent, and
 * every incoming message is parsed defensively.
 */

export const PROTOCOL = "astra-proto/1";

export const MODALITY_DIMS: Record<string, number> = {
  camera: 3,
  command: 5,
  robot: 3,
};

export type ErrorCode =
  | "version"
  | "protocol"
  | "state"
  | "payload"
  | "sequence"
  | "capacity"
  | "limit";

export interface HelloMsg {
  type: "hello";
  protocol: string;
}

export interface StartMsg {
  type: "start";
  seed: number;
  encoding: "png" | "raw";
  sampler?: { steps?: number; guidance_scale?: number };
}

export interface ActionMsg {
  type: "action";
  modality: string;
  payload: number[];
  client_seq: number;
}

export interface SetGuidanceMsg {
  type: "set_guidance";
  s: number;
}

export interface ResetMsg {
  type: "reset";
}

export interface ByeMsg {
  type: "bye";
}

export type ClientMessage =
  | HelloMsg
  | StartMsg
  | ActionMsg
  | SetGuidanceMsg
  | ResetMsg
  | ByeMsg;

export interface WelcomeMsg {
  type: "welcome";
  session: string;
  seq: number;
  protocol: string;
  frame_size: [number, number, number];
  chunk_frames: number;
  modalities: Record<string, number>;
}

export interface FrameMsg {
  type: "frame";
  session: string;
  seq: number;
  chunk: number;
  frame: number;
  data: string;
}

export interface MetricsMsg {
  type: "metrics";
  session: string;
  seq: number;
  chunk: number;
  latency: number;
  buffer: number;
  pending: number;
  guidance_scale: number;
}

export interface ErrorMsg {
  type: "error";
  session: string | null;
  seq: number;
  code: ErrorCode;
  message: string;
}

export interface ServerByeMsg {
  type: "bye";
  session: string;
  seq: number;
}

export type ServerMessage =
  | WelcomeMsg
  | FrameMsg
  | MetricsMsg
  | ErrorMsg
  | ServerByeMsg;

const SERVER_TYPES = new Set(["welcome", "frame", "metrics", "error", "bye"]);

/** Parse one incoming text message; returns null for anything malformed. */
export function parseServerMessage(text: string): ServerMessage | null {
  let obj: unknown;
  try {
    obj = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof obj !== "object" || obj === null) return null;
  const msg = obj as Record<string, unknown>;
  if (typeof msg.type !== "string" || !SERVER_TYPES.has(msg.type)) return null;
  if (typeof msg.seq !== "number") return null;
  switch (msg.type) {
    case "welcome":
      if (
        msg.protocol !== PROTOCOL ||
        !Array.isArray(msg.frame_size) ||
        msg.frame_size.length !== 3 ||
        typeof msg.chunk_frames !== "number" ||
        typeof msg.modalities !== "object"
      ) {
        return null;
      }
      break;
    case "frame":
      if (
        typeof msg.chunk !== "number" ||
        typeof msg.frame !== "number" ||
        typeof msg.data !== "string"
      ) {
        return null;
      }
      break;
    case "metrics":
      if (typeof msg.chunk !== "number") return null;
      break;
    case "error":
      if (typeof msg.code !== "string" || typeof msg.message !== "string") {
        return null;
      }
      break;
  }
  return msg as unknown as ServerMessage;
}

/**
 * Validate an outgoing message against the protocol and the negotiated
 * modality table.  Returns an error string, or null when valid.
 */
export function validateClientMessage(
  msg: ClientMessage,
  modalities: Record<string, number> | null,
): string | null {
  switch (msg.type) {
    case "hello":
      return msg.protocol === PROTOCOL ? null : "wrong protocol version";
    case "start":
      if (!Number.isInteger(msg.seed)) return "seed must be an integer";
      if (msg.encoding !== "png" && msg.encoding !== "raw") {
        return "encoding must be png or raw";
      }
      return null;
    case "action": {
      if (!Number.isInteger(msg.client_seq) || msg.client_seq < 1) {
        return "client_seq must be a positive integer";
      }
      if (modalities === null) return "no negotiated modalities";
      const dim = modalities[msg.modality];
      if (dim === undefined) return `modality ${msg.modality} not negotiated`;
      if (msg.payload.length !== dim) {
        return `payload must have ${dim} entries`;
      }
      if (!msg.payload.every((v) => typeof v === "number" && isFinite(v))) {
        return "payload entries must be finite numbers";
      }
      return null;
    }
    case "set_guidance":
      return typeof msg.s === "number" && isFinite(msg.s) && msg.s >= 0
        ? null
        : "s must be a number >= 0";
    case "reset":
    case "bye":
      return null;
  }
}
