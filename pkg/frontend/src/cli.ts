#!/usr/bin/env node
/**
 * figplots: regenerate figures from simulation outputs.
 *
 *   figplots --figure <family|figN> --in <path[,path...]> --out <image.svg>
 *            [--line <line.csv>] [--seed <n>] [--stride <k>]
 *
 * Families: trajectories, dispersion, eigenfunction, evolution, xtheta,
 * bistability, p2series, phase, stationary, mosaic (figN aliases map the
 * published figure numbers onto these). Inputs are the documented CSV and
 * raw grid-dump formats only. Rendering is deterministic and never mutates
 * its inputs.
 */

import * as fs from 'node:fs';
import * as path from 'node:path';

import { resolveRenderer, RenderOptions } from './figures.js';

function parseArgs(argv: string[]): { figure: string; out: string } & RenderOptions {
  const opts: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith('--') || i + 1 >= argv.length) {
      throw new Error(`malformed arguments near "${key}"`);
    }
    opts[key.slice(2)] = argv[i + 1];
  }
  for (const required of ['figure', 'in', 'out']) {
    if (!(required in opts)) {
      throw new Error(`--${required} is required`);
    }
  }
  return {
    figure: opts['figure'],
    out: opts['out'],
    inputs: opts['in'].split(',').filter((s) => s.length > 0),
    line: opts['line'],
    seed: opts['seed'] !== undefined ? Number(opts['seed']) : undefined,
    quiverStride: opts['stride'] !== undefined ? Number(opts['stride']) : undefined,
  };
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const renderer = resolveRenderer(parsed.figure);
    const svg = renderer(parsed);
    fs.mkdirSync(path.dirname(path.resolve(parsed.out)), { recursive: true });
    fs.writeFileSync(parsed.out, svg.toString());
    console.log(`wrote ${parsed.out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invoked = process.argv[1] ? path.resolve(process.argv[1]) : '';
if (invoked === path.resolve(new URL(import.meta.url).pathname)) {
  process.exit(main(process.argv.slice(2)));
}
