import * as fs from 'node:fs';

export interface GridMeta {
  nx: number;
  ny: number;
  dx: number;
  dy: number;
  field_name: string;
  time: number;
  ntheta?: number;
  dtheta?: number;
  axes?: string[];
  [key: string]: unknown;
}

/**
 * A raw float64 grid dump: `<stem>.f64` (little-endian, first index
 * fastest) plus the `<stem>.json` sidecar.
 */
export class GridDump {
  constructor(
    readonly values: Float64Array,
    readonly meta: GridMeta,
  ) {}

  get nx(): number {
    return this.meta.nx;
  }

  get ny(): number {
    return this.meta.ny;
  }

  get ntheta(): number {
    return this.meta.ntheta ?? 1;
  }

  get is3d(): boolean {
    return this.meta.ntheta !== undefined;
  }

  /** Value at (i, j[, k]); i varies fastest in the file layout. */
  at(i: number, j: number, k = 0): number {
    return this.values[i + this.nx * (j + this.ny * k)];
  }

  /** 2D slab at fixed k as a row-major (i, j) array of rows over j. */
  slab(k = 0): number[][] {
    const out: number[][] = [];
    for (let i = 0; i < this.nx; i++) {
      const row: number[] = [];
      for (let j = 0; j < this.ny; j++) {
        row.push(this.at(i, j, k));
      }
      out.push(row);
    }
    return out;
  }
}

export function readGridDump(stem: string): GridDump {
  const base = stem.replace(/\.(f64|json)$/, '');
  const meta = JSON.parse(fs.readFileSync(`${base}.json`, 'utf-8')) as GridMeta;
  const buf = fs.readFileSync(`${base}.f64`);
  const n = meta.nx * meta.ny * (meta.ntheta ?? 1);
  if (buf.length !== 8 * n) {
    throw new Error(
      `grid dump ${base}: expected ${n} float64 values, got ${buf.length / 8}`,
    );
  }
  const values = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    values[i] = buf.readDoubleLE(8 * i);
  }
  return new GridDump(values, meta);
}
