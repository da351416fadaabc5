/**
 * Pose backends.
 *
 * "none" reports no detections (useful for smoke runs and content with no
 * people). "scripted:<file>" replays detections from a fixture file, which
 * stands in for a real model in tests the same way the pipeline's scripted
 * answering client does. Real COCO-17 models plug in by implementing
 * PoseBackend.detect; nothing else changes.
 */

import { readFileSync } from "node:fs";

import { FrameView, PoseBackend, RawPerson } from "./types";

export class NullBackend implements PoseBackend {
  detect(): RawPerson[] {
    return [];
  }
}

interface ScriptEntry {
  t: number;
  persons: RawPerson[];
}

type Script = Record<string, ScriptEntry[]>;

export class ScriptedBackend implements PoseBackend {
  private script: Script;

  constructor(path: string) {
    let raw: string;
    try {
      raw = readFileSync(path, "utf-8");
    } catch (err) {
      throw new Error(`cannot load scripted backend file ${path}: ${err}`);
    }
    this.script = JSON.parse(raw) as Script;
  }

  detect(_frame: FrameView, timestampS: number, videoId: string): RawPerson[] {
    const entries = this.script[videoId] ?? [];
    let best: ScriptEntry | undefined;
    for (const e of entries) {
      if (Math.abs(e.t - timestampS) > 0.5) continue;
      if (!best || Math.abs(e.t - timestampS) < Math.abs(best.t - timestampS)) {
        best = e;
      }
    }
    return best ? best.persons : [];
  }
}

export function loadBackend(model: string): PoseBackend {
  if (model === "none") {
    return new NullBackend();
  }
  if (model.startsWith("scripted:")) {
    return new ScriptedBackend(model.slice("scripted:".length));
  }
  throw new Error(
    `unknown model ${JSON.stringify(model)}; expected "none" or "scripted:<file>"`,
  );
}
