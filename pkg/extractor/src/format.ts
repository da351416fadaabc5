/**
 * Canonical JSONL emission.
 *
 * The consuming pipeline serializes records with fixed key order and floats
 * at 9 significant digits (printf %g semantics). Emitting the identical
 * byte form here means extractor output survives a parse/re-serialize round
 * trip bit for bit, which is the conformance contract between the two sides.
 */

import { WireFrame, WirePerson, WireRecord } from "./types";

/** Format a finite number like printf "%.9g". */
export function g9(x: number): string {
  if (!Number.isFinite(x)) {
    throw new Error(`cannot serialize non-finite number: ${x}`);
  }
  if (x === 0) {
    return Object.is(x, -0) ? "-0" : "0";
  }
  const m = x.toExponential(8).match(/^(-?)(\d)\.(\d+)e([+-]\d+)$/);
  if (!m) {
    throw new Error(`unexpected exponential form for ${x}`);
  }
  const sign = m[1];
  let digits = (m[2] + m[3]).replace(/0+$/, "");
  if (digits === "") digits = "0";
  const exp = parseInt(m[4], 10);

  if (exp < -4 || exp >= 9) {
    const mantissa = digits.length > 1 ? `${digits[0]}.${digits.slice(1)}` : digits;
    const expSign = exp < 0 ? "-" : "+";
    const expAbs = String(Math.abs(exp)).padStart(2, "0");
    return `${sign}${mantissa}e${expSign}${expAbs}`;
  }
  if (exp >= 0) {
    if (digits.length <= exp + 1) {
      return sign + digits + "0".repeat(exp + 1 - digits.length);
    }
    return `${sign}${digits.slice(0, exp + 1)}.${digits.slice(exp + 1)}`;
  }
  return `${sign}0.${"0".repeat(-exp - 1)}${digits}`;
}

function person(p: WirePerson): string {
  const box = p.bbox.map(g9).join(",");
  const kps = p.keypoints
    .map((k) => `[${g9(k.h)},${g9(k.w)},${g9(k.conf)}]`)
    .join(",");
  return `{"bbox":[${box}],"keypoints":[${kps}]}`;
}

function frame(f: WireFrame): string {
  return (
    `{"frame_index":${f.frameIndex},` +
    `"timestamp_s":${g9(f.timestampS)},` +
    `"persons":[${f.persons.map(person).join(",")}]}`
  );
}

/** One detection JSONL line (no trailing newline). */
export function formatRecordLine(r: WireRecord): string {
  return (
    `{"video_id":${JSON.stringify(r.videoId)}` +
    `,"clip_id":${JSON.stringify(r.clipId)}` +
    `,"meta":{"width":${r.width}` +
    `,"height":${r.height}` +
    `,"duration_s":${g9(r.durationS)}` +
    `,"caption":${JSON.stringify(r.caption)}}` +
    `,"existence_frames":[${r.existenceFrames.map(frame).join(",")}]` +
    `,"action_frames":[${r.actionFrames.map(frame).join(",")}]}`
  );
}
