#!/usr/bin/env node
/**
 * render --spec fig.json --out fig.svg
 *
 * Reads a figure spec (curve CSV paths, labels, optional reference-slope
 * guides), renders a log2-log2 scaling figure, and writes an SVG. All
 * validation happens before the output file is touched, so a failed run
 * leaves no partial artifact behind.
 */

import { writeFileSync } from "node:fs";
import { readFileSync } from "node:fs";
import { buildFigure } from "./figure";

function parseArgs(argv: string[]): { spec: string; out: string } {
  let spec: string | undefined;
  let out: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--spec") {
      spec = argv[++i];
    } else if (argv[i] === "--out") {
      out = argv[++i];
    } else {
      throw new Error(`unknown argument: ${argv[i]}`);
    }
  }
  if (!spec || !out) {
    throw new Error("usage: render --spec <figure.json> --out <figure.svg>");
  }
  return { spec, out };
}

export function main(argv: string[]): number {
  let args: { spec: string; out: string };
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`render: ${(err as Error).message}\n`);
    return 2;
  }
  try {
    const svg = buildFigure(readFileSync(args.spec, "utf-8"));
    writeFileSync(args.out, svg, "utf-8");
  } catch (err) {
    process.stderr.write(`render: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
