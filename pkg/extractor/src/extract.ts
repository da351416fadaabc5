/**
 * Per-video extraction: decode, sample 16 uniform + 1 fps frames, run the
 * pose backend, normalize to the detection wire format.
 */

import { basename } from "node:path";
import { readFileSync } from "node:fs";

import { formatRecordLine } from "./format";
import { actionTimestamps, frameIndexFor, uniformTimestamps } from "./sampling";
import {
  ExtractorConfig,
  PoseBackend,
  RawPerson,
  WireFrame,
  WirePerson,
  WireRecord,
} from "./types";
import { frameAt, parseY4M, Y4MVideo } from "./y4m";

const N_KEYPOINTS = 17;

function clamp01(v: number): number {
  return v < 0 ? 0 : v > 1 ? 1 : v;
}

function normalizePerson(p: RawPerson, width: number, height: number): WirePerson {
  const xs = [p.box.x1 / width, p.box.x2 / width].map(clamp01).sort((a, b) => a - b);
  const ys = [p.box.y1 / height, p.box.y2 / height].map(clamp01).sort((a, b) => a - b);
  const keypoints = [];
  for (let i = 0; i < N_KEYPOINTS; i++) {
    const kp = p.keypoints[i];
    if (kp) {
      keypoints.push({
        h: clamp01(kp.y / height),
        w: clamp01(kp.x / width),
        conf: clamp01(kp.score),
      });
    } else {
      // undetected joints are emitted at zero confidence, never omitted
      keypoints.push({ h: 0, w: 0, conf: 0 });
    }
  }
  return { bbox: [xs[0], ys[0], xs[1], ys[1]], keypoints };
}

function sampleFrames(
  video: Y4MVideo,
  timestamps: number[],
  videoId: string,
  backend: PoseBackend,
  confMin: number,
): WireFrame[] {
  return timestamps.map((t) => {
    const idx = frameIndexFor(t, video.fpsNum, video.fpsDen, video.frameCount);
    const detections = backend
      .detect(frameAt(video, idx), t, videoId)
      .filter((p) => p.score >= confMin)
      .map((p) => normalizePerson(p, video.width, video.height));
    return { frameIndex: idx, timestampS: t, persons: detections };
  });
}

export function videoIdFor(path: string): string {
  return basename(path).replace(/\.y4m$/i, "");
}

export function extractVideo(
  path: string,
  cfg: ExtractorConfig,
  backend: PoseBackend,
): WireRecord {
  const video = parseY4M(readFileSync(path));
  const videoId = videoIdFor(path);
  return {
    videoId,
    clipId: `${videoId}_c0`,
    width: video.width,
    height: video.height,
    durationS: video.durationS,
    caption: cfg.captions[videoId] ?? "",
    existenceFrames: sampleFrames(
      video,
      uniformTimestamps(video.durationS, cfg.framesUniform),
      videoId,
      backend,
      cfg.confMin,
    ),
    actionFrames: sampleFrames(
      video,
      actionTimestamps(video.durationS, cfg.actionFps),
      videoId,
      backend,
      cfg.confMin,
    ),
  };
}

export interface BatchResult {
  lines: string[];
  errors: { video: string; error: string }[];
}

/** Extract every video (sorted for determinism); failures land in `errors`. */
export function extractBatch(
  paths: string[],
  cfg: ExtractorConfig,
  backend: PoseBackend,
): BatchResult {
  const lines: string[] = [];
  const errors: { video: string; error: string }[] = [];
  for (const path of [...paths].sort()) {
    try {
      lines.push(formatRecordLine(extractVideo(path, cfg, backend)));
    } catch (err) {
      errors.push({ video: path, error: String(err instanceof Error ? err.message : err) });
    }
  }
  return { lines, errors };
}
