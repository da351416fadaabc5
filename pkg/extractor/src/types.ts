/** Shared types for the extraction pipeline. */

/** One decoded video ready for sampling. */
export interface VideoInfo {
  width: number;
  height: number;
  fpsNum: number;
  fpsDen: number;
  frameCount: number;
  durationS: number;
}

/** Luma plane of one decoded frame; enough for lightweight detectors. */
export interface FrameView {
  width: number;
  height: number;
  luma: Buffer;
}

/** Pixel-space keypoint as a pose model reports it. */
export interface RawKeypoint {
  x: number;
  y: number;
  score: number;
}

/** Pixel-space person detection from a pose backend. */
export interface RawPerson {
  score: number;
  box: { x1: number; y1: number; x2: number; y2: number };
  keypoints: RawKeypoint[];
}

/**
 * A pose backend maps one frame to person detections in pixel coordinates.
 * Adapting a real COCO-17 model means implementing this single method; the
 * extractor handles sampling, confidence filtering, normalization, keypoint
 * padding and serialization.
 */
export interface PoseBackend {
  detect(frame: FrameView, timestampS: number, videoId: string): RawPerson[];
}

export interface ExtractorConfig {
  /** backend selector: "none" or "scripted:<path>" */
  model: string;
  /** persons scoring below this are dropped */
  confMin: number;
  framesUniform: number;
  actionFps: number;
  /** optional map of video id -> caption */
  captions: Record<string, string>;
}

export const DEFAULT_CONFIG: ExtractorConfig = {
  model: "none",
  confMin: 0.3,
  framesUniform: 16,
  actionFps: 1,
  captions: {},
};

/** Normalized wire-format shapes (mirrors the pipeline's detection schema). */
export interface WireKeypoint {
  h: number;
  w: number;
  conf: number;
}

export interface WirePerson {
  bbox: [number, number, number, number];
  keypoints: WireKeypoint[];
}

export interface WireFrame {
  frameIndex: number;
  timestampS: number;
  persons: WirePerson[];
}

export interface WireRecord {
  videoId: string;
  clipId: string;
  width: number;
  height: number;
  durationS: number;
  caption: string;
  existenceFrames: WireFrame[];
  actionFrames: WireFrame[];
}
