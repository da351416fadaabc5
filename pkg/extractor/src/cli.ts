#!/usr/bin/env node
/**
 * extract --videos <glob-or-paths...> --out <file> [--conf 0.3]
 *         [--model none|scripted:<file>] [--captions <json>]
 *
 * Writes one detection JSONL line per decodable video to --out and a sidecar
 * log of per-file failures to <out>.log. Exit 0 when the batch ran (even
 * with per-file errors), 1 on startup problems.
 */

import { readdirSync, readFileSync, statSync, writeFileSync } from "node:fs";
import { dirname, basename, join } from "node:path";

import { loadBackend } from "./backend";
import { extractBatch } from "./extract";
import { DEFAULT_CONFIG, ExtractorConfig } from "./types";

function globToRegex(pattern: string): RegExp {
  const escaped = pattern
    .replace(/[.+^${}()|[\]\\]/g, "\\$&")
    .replace(/\*/g, ".*")
    .replace(/\?/g, ".");
  return new RegExp(`^${escaped}$`);
}

function expandVideosArg(args: string[]): string[] {
  const out: string[] = [];
  for (const arg of args) {
    if (arg.includes("*") || arg.includes("?")) {
      const dir = dirname(arg);
      const re = globToRegex(basename(arg));
      let names: string[];
      try {
        names = readdirSync(dir);
      } catch {
        continue;
      }
      for (const name of names.sort()) {
        if (re.test(name)) out.push(join(dir, name));
      }
    } else {
      out.push(arg);
    }
  }
  return out;
}

interface Args {
  videos: string[];
  out: string;
  conf: number;
  model: string;
  captions: string | null;
}

function parseArgs(argv: string[]): Args {
  const args: Args = {
    videos: [],
    out: "",
    conf: DEFAULT_CONFIG.confMin,
    model: DEFAULT_CONFIG.model,
    captions: null,
  };
  let i = 0;
  if (argv[0] === "extract") i = 1; // tolerate the subcommand form
  for (; i < argv.length; i++) {
    const a = argv[i];
    switch (a) {
      case "--videos":
        while (i + 1 < argv.length && !argv[i + 1].startsWith("--")) {
          args.videos.push(argv[++i]);
        }
        break;
      case "--out":
        args.out = argv[++i];
        break;
      case "--conf":
        args.conf = Number(argv[++i]);
        break;
      case "--model":
        args.model = argv[++i];
        break;
      case "--captions":
        args.captions = argv[++i];
        break;
      default:
        throw new Error(`unknown argument: ${a}`);
    }
  }
  if (args.videos.length === 0) throw new Error("--videos is required");
  if (!args.out) throw new Error("--out is required");
  if (!Number.isFinite(args.conf) || args.conf < 0 || args.conf > 1) {
    throw new Error(`--conf must be in [0, 1], got ${args.conf}`);
  }
  return args;
}

export function main(argv: string[]): number {
  let args: Args;
  let cfg: ExtractorConfig;
  let paths: string[];
  try {
    args = parseArgs(argv);
    paths = expandVideosArg(args.videos);
    if (paths.length === 0) {
      throw new Error("no videos matched --videos");
    }
    for (const p of paths) {
      statSync(p); // missing explicit paths are startup errors
    }
    cfg = {
      ...DEFAULT_CONFIG,
      model: args.model,
      confMin: args.conf,
      captions: args.captions
        ? (JSON.parse(readFileSync(args.captions, "utf-8")) as Record<string, string>)
        : {},
    };
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }

  let backend;
  try {
    backend = loadBackend(cfg.model); // model load failure is a startup error
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }

  const result = extractBatch(paths, cfg, backend);
  writeFileSync(args.out, result.lines.map((l) => l + "\n").join(""), "utf-8");
  writeFileSync(
    `${args.out}.log`,
    result.errors.map((e) => JSON.stringify(e) + "\n").join(""),
    "utf-8",
  );
  console.error(
    `extracted ${result.lines.length}/${paths.length} videos` +
      (result.errors.length ? ` (${result.errors.length} failed, see ${args.out}.log)` : ""),
  );
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
