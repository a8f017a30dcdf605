/**
 * Input bindings: map keyboard/wheel events to action payloads per
 * modality.  Every payload produced here validates against the
 * negotiated modality dimensions.
 */

export interface BoundAction {
  modality: string;
  payload: number[];
}

const COMMAND_INDEX: Record<string, number> = {
  up: 0,
  down: 1,
  left: 2,
  right: 3,
  stay: 4,
};

function commandOneHot(name: keyof typeof COMMAND_INDEX): number[] {
  const v = [0, 0, 0, 0, 0];
  v[COMMAND_INDEX[name]] = 1;
  return v;
}

/** Camera pans: arrow keys move the view by one texture unit. */
export const CAMERA_KEYS: Record<string, number[]> = {
  ArrowRight: [1, 0, 0],
  ArrowLeft: [-1, 0, 0],
  ArrowDown: [0, 1, 0],
  ArrowUp: [0, -1, 0],
};

/** Grid commands: WASD and arrows, one-hot over (up,down,left,right,stay). */
export const COMMAND_KEYS: Record<string, number[]> = {
  KeyW: commandOneHot("up"),
  KeyS: commandOneHot("down"),
  KeyA: commandOneHot("left"),
  KeyD: commandOneHot("right"),
  ArrowUp: commandOneHot("up"),
  ArrowDown: commandOneHot("down"),
  ArrowLeft: commandOneHot("left"),
  ArrowRight: commandOneHot("right"),
  Space: commandOneHot("stay"),
};

/** Map a key code to an action for the given modality, or null. */
export function bindKey(modality: string, code: string): BoundAction | null {
  if (modality === "camera") {
    const p = CAMERA_KEYS[code];
    return p ? { modality, payload: [...p] } : null;
  }
  if (modality === "command") {
    const p = COMMAND_KEYS[code];
    return p ? { modality, payload: [...p] } : null;
  }
  return null;
}

/** Camera zoom from wheel delta, clamped to the world's dzoom bound. */
export function bindWheel(modality: string, deltaY: number): BoundAction | null {
  if (modality !== "camera") return null;
  const dz = Math.max(-0.1, Math.min(0.1, -deltaY / 1000));
  return { modality, payload: [0, 0, dz] };
}

/** Robot arm sliders: (d_theta1, d_theta2, grip) passed through clamped. */
export function bindSliders(
  modality: string,
  dtheta1: number,
  dtheta2: number,
  grip: number,
): BoundAction | null {
  if (modality !== "robot") return null;
  const clamp = (v: number, lo: number, hi: number) =>
    Math.max(lo, Math.min(hi, v));
  return {
    modality,
    payload: [
      clamp(dtheta1, -0.35, 0.35),
      clamp(dtheta2, -0.35, 0.35),
      clamp(grip, 0, 1),
    ],
  };
}
