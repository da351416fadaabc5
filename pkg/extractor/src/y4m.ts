/**
 * Minimal YUV4MPEG2 (.y4m) reader.
 *
 * y4m is the uncompressed interchange format ffmpeg and friends pipe raw
 * video through, so any source clip converts with
 * `ffmpeg -i clip.mp4 -pix_fmt yuv420p clip.y4m`. Only the luma plane is
 * retained per frame; that is all the shipped backends look at.
 */

import { FrameView, VideoInfo } from "./types";

export interface Y4MVideo extends VideoInfo {
  frames: Buffer[]; // luma planes
}

const MAGIC = "YUV4MPEG2";

function chromaPlaneSize(colorspace: string, w: number, h: number): number {
  if (colorspace.startsWith("C420")) {
    return Math.ceil(w / 2) * Math.ceil(h / 2);
  }
  if (colorspace.startsWith("C422")) {
    return Math.ceil(w / 2) * h;
  }
  if (colorspace.startsWith("C444")) {
    return w * h;
  }
  if (colorspace.startsWith("Cmono")) {
    return 0;
  }
  throw new Error(`unsupported y4m colorspace: ${colorspace}`);
}

export function parseY4M(data: Buffer): Y4MVideo {
  const headerEnd = data.indexOf(0x0a);
  if (headerEnd < 0) {
    throw new Error("not a y4m stream: missing header line");
  }
  const header = data.subarray(0, headerEnd).toString("ascii");
  const params = header.split(" ");
  if (params[0] !== MAGIC) {
    throw new Error(`not a y4m stream: bad magic ${JSON.stringify(params[0])}`);
  }
  let width = 0;
  let height = 0;
  let fpsNum = 0;
  let fpsDen = 1;
  let colorspace = "C420jpeg";
  for (const p of params.slice(1)) {
    if (p.startsWith("W")) width = parseInt(p.slice(1), 10);
    else if (p.startsWith("H")) height = parseInt(p.slice(1), 10);
    else if (p.startsWith("F")) {
      const [num, den] = p.slice(1).split(":");
      fpsNum = parseInt(num, 10);
      fpsDen = parseInt(den, 10);
    } else if (p.startsWith("C")) colorspace = p;
  }
  if (!(width > 0) || !(height > 0)) {
    throw new Error(`y4m header missing dimensions: ${header}`);
  }
  if (!(fpsNum > 0) || !(fpsDen > 0)) {
    throw new Error(`y4m header missing frame rate: ${header}`);
  }
  const lumaSize = width * height;
  const frameSize = lumaSize + 2 * chromaPlaneSize(colorspace, width, height);

  const frames: Buffer[] = [];
  let pos = headerEnd + 1;
  while (pos < data.length) {
    const lineEnd = data.indexOf(0x0a, pos);
    if (lineEnd < 0) {
      throw new Error(`truncated frame marker at byte ${pos}`);
    }
    const marker = data.subarray(pos, lineEnd).toString("ascii");
    if (!marker.startsWith("FRAME")) {
      throw new Error(`expected FRAME marker at byte ${pos}, got ${JSON.stringify(marker)}`);
    }
    const start = lineEnd + 1;
    if (start + frameSize > data.length) {
      throw new Error(`truncated frame data at byte ${start}`);
    }
    frames.push(data.subarray(start, start + lumaSize));
    pos = start + frameSize;
  }
  if (frames.length === 0) {
    throw new Error("y4m stream has no frames");
  }
  return {
    width,
    height,
    fpsNum,
    fpsDen,
    frameCount: frames.length,
    durationS: (frames.length * fpsDen) / fpsNum,
    frames,
  };
}

export function frameAt(video: Y4MVideo, index: number): FrameView {
  return { width: video.width, height: video.height, luma: video.frames[index] };
}

/** Encode frames of luma planes back to y4m bytes (used by tests and tools). */
export function encodeY4M(
  width: number,
  height: number,
  fpsNum: number,
  fpsDen: number,
  lumaFrames: Buffer[],
): Buffer {
  const header = Buffer.from(
    `${MAGIC} W${width} H${height} F${fpsNum}:${fpsDen} Ip A1:1 C420jpeg\n`,
    "ascii",
  );
  const chroma = Buffer.alloc(2 * Math.ceil(width / 2) * Math.ceil(height / 2), 128);
  const parts: Buffer[] = [header];
  for (const luma of lumaFrames) {
    if (luma.length !== width * height) {
      throw new Error(`luma plane is ${luma.length} bytes, want ${width * height}`);
    }
    parts.push(Buffer.from("FRAME\n", "ascii"), luma, chroma);
  }
  return Buffer.concat(parts);
}
