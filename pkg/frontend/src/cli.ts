#!/usr/bin/env node
/**
 * figures <kind> --in <csv> --out <svg>
 *
 * kinds: strength | composition | ternary | evolve-dist | evolve-payoff |
 *        dynamics | escape
 *
 * Reads a willsim harness CSV, writes a deterministic SVG. Schema
 * mismatches (wrong/missing columns, non-numeric cells) exit non-zero.
 */

import { readFileSync, writeFileSync } from "node:fs";
import process from "node:process";

import { parseCsv } from "./csv.js";
import { RenderOptions } from "./charts/common.js";
import { renderComposition } from "./charts/composition.js";
import { renderDynamics } from "./charts/dynamics.js";
import { renderEscape } from "./charts/escape.js";
import { renderEvolveDist, renderEvolvePayoff } from "./charts/evolve.js";
import { renderStrength } from "./charts/strength.js";
import { renderTernary } from "./charts/ternary.js";

const RENDERERS: Record<string, (table: ReturnType<typeof parseCsv>, options: RenderOptions) => string> = {
  strength: renderStrength,
  composition: renderComposition,
  ternary: renderTernary,
  "evolve-dist": renderEvolveDist,
  "evolve-payoff": renderEvolvePayoff,
  dynamics: renderDynamics,
  escape: renderEscape,
};

function usage(): string {
  return (
    "usage: figures <kind> --in <csv> --out <svg> [--no-ci] [--n1 X] [--n2 X]\n" +
    `kinds: ${Object.keys(RENDERERS).join(", ")}\n`
  );
}

export function main(argv: string[]): number {
  const args = [...argv];
  const kind = args.shift();
  if (!kind || kind === "--help" || kind === "-h") {
    process.stderr.write(usage());
    return kind ? 0 : 2;
  }
  const renderer = RENDERERS[kind];
  if (!renderer) {
    process.stderr.write(`unknown figure kind "${kind}"\n${usage()}`);
    return 2;
  }
  let input: string | undefined;
  let output: string | undefined;
  const options: RenderOptions = {};
  while (args.length > 0) {
    const flag = args.shift();
    switch (flag) {
      case "--in":
        input = args.shift();
        break;
      case "--out":
        output = args.shift();
        break;
      case "--no-ci":
        options.ci = false;
        break;
      case "--n1":
        options.n1 = Number(args.shift());
        break;
      case "--n2":
        options.n2 = Number(args.shift());
        break;
      default:
        process.stderr.write(`unknown flag "${flag}"\n${usage()}`);
        return 2;
    }
  }
  if (!input || !output) {
    process.stderr.write(usage());
    return 2;
  }
  let text: string;
  try {
    text = readFileSync(input, "utf-8");
  } catch (error) {
    process.stderr.write(`cannot read ${input}: ${String(error)}\n`);
    return 1;
  }
  try {
    const svg = renderer(parseCsv(text), options);
    writeFileSync(output, svg, "utf-8");
  } catch (error) {
    process.stderr.write(`${kind}: ${(error as Error).message}\n`);
    return 1;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
