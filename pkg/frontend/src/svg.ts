import { viridis } from './color.js';

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toPrecision(6);
}

function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

/** Linear data-to-pixel mapping. */
export class Scale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly p0: number,
    readonly p1: number,
  ) {}

  map(v: number): number {
    const t = this.d1 === this.d0 ? 0.5 : (v - this.d0) / (this.d1 - this.d0);
    return this.p0 + t * (this.p1 - this.p0);
  }

  ticks(n = 5): number[] {
    const out: number[] = [];
    for (let i = 0; i <= n; i++) {
      out.push(this.d0 + ((this.d1 - this.d0) * i) / n);
    }
    return out;
  }
}

/** Minimal SVG document assembler. */
export class Svg {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, sans-serif">`,
      `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polyline(pts: Array<[number, number]>, stroke: string, width = 1.5): void {
    const d = pts.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(' ');
    this.parts.push(
      `<polyline points="${d}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  circle(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, s: string, size = 11, anchor = 'start'): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}">${esc(s)}</text>`,
    );
  }

  /** Small arrow for quiver overlays. */
  arrow(x: number, y: number, ux: number, uy: number, stroke: string): void {
    const x2 = x + ux;
    const y2 = y + uy;
    this.line(x, y, x2, y2, stroke, 1);
    const len = Math.hypot(ux, uy);
    if (len > 1e-9) {
      const hx = ux / len;
      const hy = uy / len;
      const s = Math.min(3, len / 2);
      this.line(x2, y2, x2 - s * (hx + 0.5 * hy), y2 - s * (hy - 0.5 * hx), stroke, 1);
      this.line(x2, y2, x2 - s * (hx - 0.5 * hy), y2 - s * (hy + 0.5 * hx), stroke, 1);
    }
  }

  toString(): string {
    return this.parts.join('\n') + '\n</svg>\n';
  }
}

export interface HeatmapOptions {
  x: number;
  y: number;
  width: number;
  height: number;
  title?: string;
  /** color range; per-panel auto-range when absent, printed in the margin */
  vmin?: number;
  vmax?: number;
  xLabel?: string;
  yLabel?: string;
}

/**
 * Cell-centered heatmap of values[i][j]; i runs along the horizontal axis,
 * j upward. Panels auto-range their colors unless limits are given, and the
 * applied range is printed under the panel so panels stay comparable.
 */
export function heatmap(svg: Svg, values: number[][], opt: HeatmapOptions): void {
  const ni = values.length;
  const nj = values[0].length;
  let vmin = opt.vmin ?? Infinity;
  let vmax = opt.vmax ?? -Infinity;
  if (opt.vmin === undefined || opt.vmax === undefined) {
    for (const row of values) {
      for (const v of row) {
        vmin = Math.min(vmin, v);
        vmax = Math.max(vmax, v);
      }
    }
  }
  const span = vmax - vmin || 1;
  const cw = opt.width / ni;
  const ch = opt.height / nj;
  for (let i = 0; i < ni; i++) {
    for (let j = 0; j < nj; j++) {
      const t = (values[i][j] - vmin) / span;
      // overlap cells slightly to avoid antialiasing seams
      svg.rect(
        opt.x + i * cw,
        opt.y + opt.height - (j + 1) * ch,
        cw + 0.5,
        ch + 0.5,
        viridis(t),
      );
    }
  }
  if (opt.title) {
    svg.text(opt.x, opt.y - 6, opt.title, 12);
  }
  svg.text(
    opt.x,
    opt.y + opt.height + 14,
    `range [${vmin.toPrecision(3)}, ${vmax.toPrecision(3)}]`,
    10,
  );
  if (opt.xLabel) {
    svg.text(opt.x + opt.width / 2, opt.y + opt.height + 28, opt.xLabel, 11, 'middle');
  }
  if (opt.yLabel) {
    svg.text(opt.x - 8, opt.y + opt.height / 2, opt.yLabel, 11, 'end');
  }
}

export interface AxesOptions {
  x: number;
  y: number;
  width: number;
  height: number;
  xScale: Scale;
  yScale: Scale;
  xLabel?: string;
  yLabel?: string;
  title?: string;
}

/** Frame, tick labels and axis labels for a line/scatter panel. */
export function axes(svg: Svg, opt: AxesOptions): void {
  svg.line(opt.x, opt.y, opt.x, opt.y + opt.height, '#000');
  svg.line(opt.x, opt.y + opt.height, opt.x + opt.width, opt.y + opt.height, '#000');
  for (const t of opt.xScale.ticks(4)) {
    const px = opt.xScale.map(t);
    svg.line(px, opt.y + opt.height, px, opt.y + opt.height + 4, '#000');
    svg.text(px, opt.y + opt.height + 16, t.toPrecision(3), 10, 'middle');
  }
  for (const t of opt.yScale.ticks(4)) {
    const py = opt.yScale.map(t);
    svg.line(opt.x - 4, py, opt.x, py, '#000');
    svg.text(opt.x - 6, py + 3, t.toPrecision(3), 10, 'end');
  }
  if (opt.xLabel) {
    svg.text(opt.x + opt.width / 2, opt.y + opt.height + 32, opt.xLabel, 12, 'middle');
  }
  if (opt.yLabel) {
    svg.text(opt.x - 34, opt.y + opt.height / 2, opt.yLabel, 12, 'middle');
  }
  if (opt.title) {
    svg.text(opt.x, opt.y - 8, opt.title, 13);
  }
}
