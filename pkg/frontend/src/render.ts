/**
 * Frame decoding and nearest-neighbor integer upscaling.
 *
 * The pixel math is pure (typed arrays in, typed arrays out) so it is
 * testable without a DOM; only the final canvas blit touches the browser.
 */

export interface FrameShape {
  channels: number;
  height: number;
  width: number;
}

/** Decode the raw encoding: base64 of little-endian float32 [C, H, W]. */
export function decodeRawFrame(data: string, shape: FrameShape): Float32Array {
  const bin = typeof atob === "function"
    ? atob(data)
    : Buffer.from(data, "base64").toString("binary");
  const bytes = new Uint8Array(bin.length);
  for (let i = 0; i < bin.length; i++) bytes[i] = bin.charCodeAt(i);
  const floats = new Float32Array(bytes.buffer);
  const expect = shape.channels * shape.height * shape.width;
  if (floats.length !== expect) {
    throw new Error(`raw frame has ${floats.length} values, expected ${expect}`);
  }
  return floats;
}

/**
 * Convert a [C, H, W] float frame in [0, 1] to RGBA bytes upscaled by an
 * integer factor with nearest-neighbor sampling (no smoothing).
 */
export function frameToRgba(
  pixels: Float32Array,
  shape: FrameShape,
  scale: number,
): Uint8ClampedArray {
  if (!Number.isInteger(scale) || scale < 1) {
    throw new Error(`scale must be a positive integer, got ${scale}`);
  }
  const { channels, height, width } = shape;
  const W = width * scale;
  const H = height * scale;
  const out = new Uint8ClampedArray(W * H * 4);
  const plane = height * width;
  for (let y = 0; y < H; y++) {
    const sy = Math.floor(y / scale);
    for (let x = 0; x < W; x++) {
      const sx = Math.floor(x / scale);
      const src = sy * width + sx;
      const dst = (y * W + x) * 4;
      for (let c = 0; c < 3; c++) {
        const v = channels === 1 ? pixels[src] : pixels[c * plane + src];
        out[dst + c] = Math.round(Math.min(1, Math.max(0, v)) * 255);
      }
      out[dst + 3] = 255;
    }
  }
  return out;
}

/** Largest integer upscale that fits the frame into the viewport. */
export function fitScale(shape: FrameShape, maxSide: number): number {
  const side = Math.max(shape.width, shape.height);
  return Math.max(1, Math.floor(maxSide / side));
}
