import * as fs from 'node:fs';
import * as path from 'node:path';

import { numericColumn, readCsv, SchemaError } from './csv.js';
import { GridDump, readGridDump } from './griddump.js';
import { seriesColor, viridis } from './color.js';
import { axes, heatmap, Scale, Svg } from './svg.js';

export interface RenderOptions {
  inputs: string[];
  /** instability-line CSV (Pe,gamma_star,n) for the phase diagram */
  line?: string;
  /** seed selecting one realisation for the sweep mosaic */
  seed?: number;
  /** plot every k-th cell in quiver overlays */
  quiverStride?: number;
}

type Renderer = (opt: RenderOptions) => Svg;

function requireInputs(opt: RenderOptions, n: number, what: string): string[] {
  if (opt.inputs.length < n) {
    throw new SchemaError(`this figure needs ${n} input(s): ${what}`);
  }
  return opt.inputs;
}

function dataRange(vals: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of vals) {
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

/** Particle trajectory curves (unwrapped coordinates when available). */
export function renderTrajectories(opt: RenderOptions): Svg {
  const [dir] = requireInputs(opt, 1, 'a particle run directory');
  const unwrapped = path.join(dir, 'trajectory_unwrapped.csv');
  const file = fs.existsSync(unwrapped) ? unwrapped : path.join(dir, 'trajectory.csv');
  const table = readCsv(file);
  const ids = numericColumn(table, 'i');
  const xs = numericColumn(table, 'x');
  const ys = numericColumn(table, 'y');
  const byParticle = new Map<number, Array<[number, number]>>();
  for (let r = 0; r < ids.length; r++) {
    const list = byParticle.get(ids[r]) ?? [];
    list.push([xs[r], ys[r]]);
    byParticle.set(ids[r], list);
  }
  const svg = new Svg(520, 520);
  const [x0, x1] = dataRange(xs);
  const [y0, y1] = dataRange(ys);
  const sx = new Scale(x0, x1, 60, 480);
  const sy = new Scale(y0, y1, 460, 40);
  axes(svg, { x: 60, y: 40, width: 420, height: 420, xScale: sx, yScale: sy,
              xLabel: 'x', yLabel: 'y', title: 'particle trajectories' });
  let c = 0;
  for (const [, pts] of [...byParticle.entries()].sort((a, b) => a[0] - b[0])) {
    svg.polyline(pts.map(([x, y]) => [sx.map(x), sy.map(y)]), seriesColor(c++));
    const [lx, ly] = pts[pts.length - 1];
    svg.circle(sx.map(lx), sy.map(ly), 3, seriesColor(c - 1));
  }
  return svg;
}

/** Instability lines gamma*(Pe), one curve per input CSV. */
export function renderDispersion(opt: RenderOptions): Svg {
  const files = requireInputs(opt, 1, 'line CSVs (Pe,gamma_star,n)');
  const curves = files.map((f) => {
    const t = readCsv(f);
    return {
      name: path.basename(f, '.csv'),
      pe: numericColumn(t, 'Pe'),
      gamma: numericColumn(t, 'gamma_star'),
    };
  });
  const allPe = curves.flatMap((c) => c.pe);
  const allGamma = curves.flatMap((c) => c.gamma);
  const [p0, p1] = dataRange(allPe);
  const [g0, g1] = dataRange(allGamma);
  const svg = new Svg(520, 420);
  const sx = new Scale(p0, p1, 70, 490);
  const sy = new Scale(g0, g1, 360, 40);
  axes(svg, { x: 70, y: 40, width: 420, height: 320, xScale: sx, yScale: sy,
              xLabel: 'Pe', yLabel: 'gamma*', title: 'linear instability lines' });
  curves.forEach((c, i) => {
    const pts = c.pe.map((pe, k): [number, number] => [sx.map(pe), sy.map(c.gamma[k])]);
    svg.polyline(pts, seriesColor(i), 2);
    svg.text(494, 52 + 14 * i, c.name, 10);
    svg.line(478, 48 + 14 * i, 490, 48 + 14 * i, seriesColor(i), 2);
  });
  return svg;
}

function xthetaHeatmap(grid: GridDump, title: string): Svg {
  const svg = new Svg(520, 460);
  heatmap(svg, grid.slab(0), {
    x: 70, y: 40, width: 400, height: 360, title,
    xLabel: 'x', yLabel: 'theta',
  });
  return svg;
}

/** Leading-eigenfunction heatmap over (x, theta). */
export function renderEigenfunction(opt: RenderOptions): Svg {
  const [stem] = requireInputs(opt, 1, 'an (x,theta) grid dump');
  const grid = readGridDump(stem);
  const sig = typeof grid.meta.sigma_re === 'number'
    ? ` (Re sigma = ${(grid.meta.sigma_re as number).toPrecision(4)})` : '';
  return xthetaHeatmap(grid, `leading eigenfunction${sig}`);
}

function angularAverage(f: GridDump): number[][] {
  // rho_{ij} = dtheta * sum_k f_{ijk}
  const dth = f.meta.dtheta ?? (2 * Math.PI) / f.ntheta;
  const rho: number[][] = [];
  for (let i = 0; i < f.nx; i++) {
    const row: number[] = [];
    for (let j = 0; j < f.ny; j++) {
      let s = 0;
      for (let k = 0; k < f.ntheta; k++) {
        s += f.at(i, j, k);
      }
      row.push(s * dth);
    }
    rho.push(row);
  }
  return rho;
}

function polarisationField(f: GridDump): { px: number[][]; py: number[][] } {
  const dth = f.meta.dtheta ?? (2 * Math.PI) / f.ntheta;
  const px: number[][] = [];
  const py: number[][] = [];
  for (let i = 0; i < f.nx; i++) {
    const rx: number[] = [];
    const ry: number[] = [];
    for (let j = 0; j < f.ny; j++) {
      let sx = 0;
      let sy = 0;
      for (let k = 0; k < f.ntheta; k++) {
        const th = (2 * Math.PI * k) / f.ntheta;
        sx += Math.cos(th) * f.at(i, j, k);
        sy += Math.sin(th) * f.at(i, j, k);
      }
      rx.push(sx * dth);
      ry.push(sy * dth);
    }
    px.push(rx);
    py.push(ry);
  }
  return { px, py };
}

/** Density evolution panels (with polarisation quivers when f dumps exist). */
export function renderEvolution(opt: RenderOptions): Svg {
  const [dir] = requireInputs(opt, 1, 'a kinetic run directory with rho_t* dumps');
  const stems = fs.readdirSync(dir)
    .filter((n) => /^rho_t.*\.json$/.test(n))
    .map((n) => path.join(dir, n.replace(/\.json$/, '')))
    .map((stem) => ({ stem, time: (JSON.parse(
      fs.readFileSync(`${stem}.json`, 'utf-8')) as { time: number }).time }))
    .sort((a, b) => a.time - b.time);
  if (stems.length === 0) {
    throw new SchemaError(`no rho_t*.json snapshots under ${dir}`);
  }
  const picks: typeof stems = [];
  const want = Math.min(4, stems.length);
  for (let p = 0; p < want; p++) {
    picks.push(stems[Math.round((p * (stems.length - 1)) / Math.max(1, want - 1))]);
  }
  const panel = 210;
  const svg = new Svg(40 + picks.length * (panel + 30), 300);
  const stride = opt.quiverStride ?? 2;
  picks.forEach((pick, p) => {
    const rho = readGridDump(pick.stem);
    const x0 = 30 + p * (panel + 30);
    heatmap(svg, rho.slab(0), {
      x: x0, y: 40, width: panel, height: panel,
      title: `t = ${pick.time.toPrecision(3)}`,
    });
    const fStem = pick.stem.replace(/rho_t/, 'f_t');
    if (fs.existsSync(`${fStem}.json`)) {
      const f = readGridDump(fStem);
      const { px, py } = polarisationField(f);
      let maxP = 1e-12;
      for (let i = 0; i < f.nx; i++) {
        for (let j = 0; j < f.ny; j++) {
          maxP = Math.max(maxP, Math.hypot(px[i][j], py[i][j]));
        }
      }
      const cw = panel / f.nx;
      const ch = panel / f.ny;
      const alen = 0.9 * stride * Math.min(cw, ch);
      for (let i = 0; i < f.nx; i += stride) {
        for (let j = 0; j < f.ny; j += stride) {
          const cx = x0 + (i + 0.5) * cw;
          const cy = 40 + panel - (j + 0.5) * ch;
          svg.arrow(cx, cy, (alen * px[i][j]) / maxP, (-alen * py[i][j]) / maxP, '#ffffff');
        }
      }
    }
  });
  return svg;
}

/**
 * Kinetic density over (cross-stripe coordinate, theta). A 3D dump is
 * sliced across the lane (its orientation is spontaneous); a 2D dump is
 * rendered directly.
 */
export function renderXtheta(opt: RenderOptions): Svg {
  const [stem] = requireInputs(opt, 1, 'a kinetic f dump');
  const f = readGridDump(stem);
  if (!f.is3d) {
    return xthetaHeatmap(f, `f(x, theta) at t = ${f.meta.time.toPrecision(3)}`);
  }
  const rho = angularAverage(f);
  let varAlongY = 0;
  let varAlongX = 0;
  const meanCols: number[] = [];
  for (let j = 0; j < f.ny; j++) {
    let m = 0;
    for (let i = 0; i < f.nx; i++) {
      m += rho[i][j];
    }
    meanCols.push(m / f.nx);
  }
  const meanRows = rho.map((row) => row.reduce((a, b) => a + b, 0) / f.ny);
  const mean = meanRows.reduce((a, b) => a + b, 0) / f.nx;
  varAlongX = meanRows.reduce((a, b) => a + (b - mean) ** 2, 0) / f.nx;
  varAlongY = meanCols.reduce((a, b) => a + (b - mean) ** 2, 0) / f.ny;
  // slice across the stripe: vary the coordinate rho changes along
  const values: number[][] = [];
  if (varAlongX >= varAlongY) {
    for (let i = 0; i < f.nx; i++) {
      const row: number[] = [];
      for (let k = 0; k < f.ntheta; k++) {
        row.push(f.at(i, 0, k));
      }
      values.push(row);
    }
  } else {
    for (let j = 0; j < f.ny; j++) {
      const row: number[] = [];
      for (let k = 0; k < f.ntheta; k++) {
        row.push(f.at(0, j, k));
      }
      values.push(row);
    }
  }
  const svg = new Svg(520, 460);
  heatmap(svg, values, {
    x: 70, y: 40, width: 400, height: 360,
    title: `f across the stripe at t = ${f.meta.time.toPrecision(3)}`,
    xLabel: varAlongX >= varAlongY ? 'x' : 'y', yLabel: 'theta',
  });
  return svg;
}

/** Two endstate densities from differently seeded runs, side by side. */
export function renderBistability(opt: RenderOptions): Svg {
  const dirs = requireInputs(opt, 2, 'two run directories with final_rho dumps');
  const svg = new Svg(580, 320);
  dirs.slice(0, 2).forEach((dir, p) => {
    const rho = readGridDump(path.join(dir, 'final_rho'));
    heatmap(svg, rho.slab(0), {
      x: 40 + p * 280, y: 40, width: 230, height: 230,
      title: `realisation ${p + 1}`,
    });
  });
  return svg;
}

/** P2(t) curves, one per input series CSV. */
export function renderP2Series(opt: RenderOptions): Svg {
  const files = requireInputs(opt, 1, 'series CSVs (t,...,P2)');
  const curves = files.map((f) => ({
    name: path.basename(path.dirname(f)) || path.basename(f, '.csv'),
    t: numericColumn(readCsv(f), 't'),
    p2: numericColumn(readCsv(f), 'P2'),
  }));
  const [t0, t1] = dataRange(curves.flatMap((c) => c.t));
  const svg = new Svg(540, 400);
  const sx = new Scale(t0, t1, 70, 510);
  const sy = new Scale(0, 1, 340, 40);
  axes(svg, { x: 70, y: 40, width: 440, height: 300, xScale: sx, yScale: sy,
              xLabel: 't', yLabel: 'P2', title: 'second-moment evolution' });
  curves.forEach((c, i) => {
    svg.polyline(c.t.map((t, k): [number, number] =>
      [sx.map(t), sy.map(c.p2[k])]), seriesColor(i), 2);
    svg.text(300, 58 + 14 * i, c.name, 10);
    svg.line(284, 54 + 14 * i, 296, 54 + 14 * i, seriesColor(i), 2);
  });
  return svg;
}

/** Phase-diagram scatter with the instability line overlaid. */
export function renderPhase(opt: RenderOptions): Svg {
  const [phasePath] = requireInputs(opt, 1, 'phase.csv (per-pair aggregates)');
  const file = fs.statSync(phasePath).isDirectory()
    ? path.join(phasePath, 'phase.csv') : phasePath;
  const t = readCsv(file);
  const gamma = numericColumn(t, 'gamma');
  const pe = numericColumn(t, 'Pe');
  const dmax = numericColumn(t, 'd_fstar_max');
  const p2 = numericColumn(t, 'P2_mean');
  const labels = t.header.includes('label')
    ? t.rows.map((r) => String(r[t.header.indexOf('label')])) : null;

  const [pe0, pe1] = dataRange(pe);
  const [g0, g1] = dataRange(gamma);
  const svg = new Svg(940, 420);
  const panels: Array<{ name: string; vals: number[]; x: number }> = [
    { name: 'max distance to homogeneous', vals: dmax, x: 70 },
    { name: 'mean P2', vals: p2, x: 540 },
  ];
  for (const panel of panels) {
    const sx = new Scale(pe0, pe1, panel.x, panel.x + 340);
    const sy = new Scale(g0, g1, 360, 40);
    axes(svg, { x: panel.x, y: 40, width: 340, height: 320, xScale: sx,
                yScale: sy, xLabel: 'Pe', yLabel: 'gamma', title: panel.name });
    const [v0, v1] = dataRange(panel.vals);
    panel.vals.forEach((v, k) => {
      svg.circle(sx.map(pe[k]), sy.map(gamma[k]), 6,
                 viridis((v - v0) / (v1 - v0 || 1)));
      if (labels) {
        svg.text(sx.map(pe[k]) + 8, sy.map(gamma[k]) + 3, labels[k], 9);
      }
    });
    if (opt.line) {
      const lt = readCsv(opt.line);
      const lpe = numericColumn(lt, 'Pe');
      const lg = numericColumn(lt, 'gamma_star');
      const pts = lpe
        .map((q, k): [number, number] => [q, lg[k]])
        .filter(([, g]) => g >= g0 && g <= g1)
        .map(([q, g]): [number, number] => [sx.map(q), sy.map(g)]);
      if (pts.length > 1) {
        svg.polyline(pts, '#000000', 2);
      }
    }
    svg.text(panel.x, 390, `value range [${v0.toPrecision(3)}, ${v1.toPrecision(3)}]`, 10);
  }
  return svg;
}

/** Stationary f(x, theta) heatmap. */
export function renderStationary(opt: RenderOptions): Svg {
  const [input] = requireInputs(opt, 1, 'a stationary run directory or dump stem');
  const stem = fs.existsSync(input) && fs.statSync(input).isDirectory()
    ? path.join(input, 'stationary_f') : input;
  const grid = readGridDump(stem);
  const res = typeof grid.meta.residual === 'number'
    ? ` (residual ${(grid.meta.residual as number).toExponential(1)})` : '';
  return xthetaHeatmap(grid, `stationary f(x, theta)${res}`);
}

interface MosaicCell {
  gamma: number;
  pe: number;
  stem: string;
}

/** Endstate density mosaic over the (gamma, Pe) grid for one seed. */
export function renderMosaic(opt: RenderOptions): Svg {
  const [sweepDir] = requireInputs(opt, 1, 'a sweep output directory');
  const runsDir = path.join(sweepDir, 'runs');
  if (!fs.existsSync(runsDir)) {
    throw new SchemaError(`no runs/ directory under ${sweepDir}`);
  }
  const cells: MosaicCell[] = [];
  let seed = opt.seed;
  for (const name of fs.readdirSync(runsDir).sort()) {
    const resultPath = path.join(runsDir, name, 'result.json');
    if (!fs.existsSync(resultPath)) {
      continue;
    }
    const r = JSON.parse(fs.readFileSync(resultPath, 'utf-8')) as {
      gamma: number; Pe: number; seed: number; ok: boolean;
    };
    if (seed === undefined) {
      seed = r.seed; // default to the first seed encountered
    }
    if (r.seed === seed && r.ok) {
      cells.push({ gamma: r.gamma, pe: r.Pe,
                   stem: path.join(runsDir, name, 'final_rho') });
    }
  }
  if (cells.length === 0) {
    throw new SchemaError(`no completed runs for seed ${seed} under ${runsDir}`);
  }
  const gammas = [...new Set(cells.map((c) => c.gamma))].sort((a, b) => b - a);
  const pes = [...new Set(cells.map((c) => c.pe))].sort((a, b) => a - b);
  const cell = 110;
  const svg = new Svg(90 + pes.length * (cell + 14), 70 + gammas.length * (cell + 26));
  svg.text(10, 20, `endstate density mosaic, seed ${seed}`, 13);
  for (const c of cells) {
    const row = gammas.indexOf(c.gamma);
    const col = pes.indexOf(c.pe);
    const rho = readGridDump(c.stem);
    heatmap(svg, rho.slab(0), {
      x: 80 + col * (cell + 14), y: 46 + row * (cell + 26),
      width: cell, height: cell,
    });
  }
  pes.forEach((p, col) => {
    svg.text(80 + col * (cell + 14) + cell / 2, 40, `Pe=${p}`, 10, 'middle');
  });
  gammas.forEach((g, row) => {
    svg.text(74, 46 + row * (cell + 26) + cell / 2, `g=${g}`, 10, 'end');
  });
  return svg;
}

/** One renderer entry point per figure family. */
export const RENDERERS: Record<string, Renderer> = {
  trajectories: renderTrajectories,
  dispersion: renderDispersion,
  eigenfunction: renderEigenfunction,
  evolution: renderEvolution,
  xtheta: renderXtheta,
  bistability: renderBistability,
  p2series: renderP2Series,
  phase: renderPhase,
  stationary: renderStationary,
  mosaic: renderMosaic,
};

/** Numbered figure ids accepted by the CLI, mapped onto the families. */
export const FIGURE_ALIASES: Record<string, string> = {
  fig2: 'trajectories',
  fig3: 'dispersion',
  fig4: 'eigenfunction',
  fig5: 'eigenfunction',
  fig6: 'evolution',
  fig7: 'evolution',
  fig8: 'xtheta',
  fig9: 'bistability',
  fig10: 'p2series',
  fig11: 'phase',
  fig12: 'stationary',
  fig13: 'mosaic',
  fig14: 'mosaic',
  fig15: 'mosaic',
  fig16: 'mosaic',
  fig17: 'mosaic',
  fig18: 'mosaic',
  fig19: 'mosaic',
  fig20: 'mosaic',
};

export function resolveRenderer(figure: string): Renderer {
  const family = RENDERERS[figure] ? figure : FIGURE_ALIASES[figure];
  const renderer = family ? RENDERERS[family] : undefined;
  if (!renderer) {
    throw new SchemaError(
      `unknown figure "${figure}"; families: ${Object.keys(RENDERERS).join(', ')}, ` +
        `aliases: fig2..fig20`,
    );
  }
  return renderer;
}
