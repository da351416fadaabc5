import { encodeY4M } from "../src/y4m";

/** A tiny synthetic clip: a bright rectangle sliding over a dark background. */
export function movingRectVideo(
  width: number,
  height: number,
  fps: number,
  seconds: number,
): Buffer {
  const frames: Buffer[] = [];
  const total = Math.round(fps * seconds);
  const rectW = Math.max(2, Math.floor(width / 8));
  const rectH = Math.max(2, Math.floor(height / 8));
  for (let i = 0; i < total; i++) {
    const luma = Buffer.alloc(width * height, 16);
    const x0 = Math.floor(((width - rectW) * i) / Math.max(1, total - 1));
    const y0 = Math.floor(height / 3);
    for (let y = y0; y < y0 + rectH; y++) {
      for (let x = x0; x < x0 + rectW; x++) {
        luma[y * width + x] = 235;
      }
    }
    frames.push(luma);
  }
  return encodeY4M(width, height, fps, 1, frames);
}
