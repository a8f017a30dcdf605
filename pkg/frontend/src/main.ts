/**
 * Single-page client: connects to the session service, renders streamed
 * frames on a canvas, and maps inputs to actions for the negotiated
 * modality.
 */

import { bindKey, bindSliders, bindWheel } from "./bindings.js";
import { ClientSession, OrderedFrame, Phase } from "./session.js";
import { decodeRawFrame, fitScale, frameToRgba } from "./render.js";

const $ = (id: string) => document.getElementById(id) as HTMLElement;

function el<K extends keyof HTMLElementTagNameMap>(tag: K, text?: string) {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  return node;
}

class App {
  private session: ClientSession | null = null;
  private ws: WebSocket | null = null;
  private canvas = $("view") as HTMLCanvasElement;
  private scale = 1;
  private skipped = 0;

  connect(url: string, seed: number): void {
    this.ws?.close();
    const ws = new WebSocket(url);
    this.ws = ws;
    const session = new ClientSession(
      { send: (t) => ws.send(t), close: () => ws.close() },
      {
        onPhase: (p, d) => this.showPhase(p, d),
        onFrame: (f) => this.drawFrame(f),
        onMetrics: (m) => {
          $("latency").textContent = `${(m.latency * 1000).toFixed(0)} ms`;
          $("guidance-now").textContent = m.guidance_scale.toFixed(2);
        },
        onServerError: (code, message) => {
          $("errors").textContent = `${code}: ${message}`;
        },
        onPending: (k, f) => {
          $("pending").textContent = `pending actions: ${k}/${f}`;
        },
      },
    );
    this.session = session;
    ws.onopen = () => {
      session.connect();
      session.start({ seed, encoding: "raw" });
    };
    ws.onmessage = (ev) => session.handleMessage(String(ev.data));
    ws.onerror = () => session.transportError("socket error");
    ws.onclose = () => {
      if (session.phase !== "closed") session.transportError("socket closed");
    };
  }

  private showPhase(phase: Phase, detail?: string): void {
    $("phase").textContent = detail ? `${phase} (${detail})` : phase;
    const s = this.session;
    if (phase === "live" && s?.frameSize) {
      const [, h, w] = s.frameSize;
      this.scale = fitScale({ channels: 3, height: h, width: w }, 512);
      this.canvas.width = w * this.scale;
      this.canvas.height = h * this.scale;
      this.buildControls();
    }
  }

  private drawFrame(f: OrderedFrame): void {
    const s = this.session;
    if (!s?.frameSize) return;
    const [c, h, w] = s.frameSize;
    const shape = { channels: c, height: h, width: w };
    try {
      const pixels = decodeRawFrame(f.data, shape);
      const rgba = frameToRgba(pixels, shape, this.scale);
      const ctx = this.canvas.getContext("2d")!;
      const img = ctx.createImageData(w * this.scale, h * this.scale);
      img.data.set(rgba);
      ctx.putImageData(img, 0, 0);
      $("chunk").textContent = `chunk ${f.chunk} frame ${f.frame}`;
    } catch {
      this.skipped += 1;
      $("errors").textContent = `frames skipped (decode): ${this.skipped}`;
    }
  }

  private buildControls(): void {
    const s = this.session!;
    const mods = Object.keys(s.modalities ?? {});
    $("modalities").textContent = `modalities: ${mods.join(", ")}`;
    const robot = $("robot-controls");
    robot.style.display = mods.includes("robot") ? "block" : "none";
  }

  sendBound(modality: string, payload: number[]): void {
    const err = this.session?.sendAction(modality, payload);
    if (err) $("errors").textContent = err;
  }

  modality(): string {
    return Object.keys(this.session?.modalities ?? { camera: 3 })[0];
  }

  session_(): ClientSession | null {
    return this.session;
  }
}

const app = new App();

$("connect").addEventListener("click", () => {
  const url = ($("url") as HTMLInputElement).value;
  const seed = parseInt(($("seed") as HTMLInputElement).value, 10) || 0;
  app.connect(url, seed);
});

$("reset").addEventListener("click", () => app.session_()?.reset());
$("bye").addEventListener("click", () => app.session_()?.bye());

$("guidance").addEventListener("change", () => {
  const s = parseFloat(($("guidance") as HTMLInputElement).value);
  app.session_()?.setGuidance(s);
});

window.addEventListener("keydown", (ev) => {
  const bound = bindKey(app.modality(), ev.code);
  if (bound) {
    ev.preventDefault();
    app.sendBound(bound.modality, bound.payload);
  }
});

$("view").addEventListener("wheel", (ev) => {
  const bound = bindWheel(app.modality(), (ev as WheelEvent).deltaY);
  if (bound) {
    ev.preventDefault();
    app.sendBound(bound.modality, bound.payload);
  }
});

$("robot-send").addEventListener("click", () => {
  const v = (id: string) => parseFloat(($(id) as HTMLInputElement).value);
  const bound = bindSliders("robot", v("dtheta1"), v("dtheta2"), v("grip"));
  if (bound) app.sendBound(bound.modality, bound.payload);
});

// document the binding table in the help pane
const help = $("help");
help.appendChild(el("p", "camera: arrows pan, wheel zooms"));
help.appendChild(el("p", "command: WASD/arrows move, space stays"));
help.appendChild(el("p", "robot: sliders then send"));
