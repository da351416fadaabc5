/** Frame sampling grids: 16 uniform timestamps plus a 1 fps action grid. */

const EPS = 1e-9;

/** timestamps { duration * k / n : k = 0..n-1 }, strictly increasing. */
export function uniformTimestamps(durationS: number, n: number): number[] {
  if (!(durationS > 0)) {
    throw new Error(`duration must be positive, got ${durationS}`);
  }
  if (!(n >= 2)) {
    throw new Error(`need at least 2 uniform samples, got ${n}`);
  }
  const out: number[] = [];
  for (let k = 0; k < n; k++) {
    out.push((durationS * k) / n);
  }
  return out;
}

/** timestamps { k / fps : k / fps < duration }, e.g. 8 s at 1 fps -> 0..7. */
export function actionTimestamps(durationS: number, fps: number): number[] {
  if (!(fps > 0)) {
    throw new Error(`action fps must be positive, got ${fps}`);
  }
  const out: number[] = [];
  for (let k = 0; k / fps < durationS - EPS; k++) {
    out.push(k / fps);
  }
  return out;
}

/** Nearest decoded frame for a timestamp. */
export function frameIndexFor(
  timestampS: number,
  fpsNum: number,
  fpsDen: number,
  frameCount: number,
): number {
  const idx = Math.round((timestampS * fpsNum) / fpsDen);
  return Math.max(0, Math.min(frameCount - 1, idx));
}
