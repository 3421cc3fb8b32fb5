import * as fs from 'node:fs';

export interface Table {
  header: string[];
  rows: Array<Array<number | string>>;
}

export class SchemaError extends Error {}

/** Parse a simple comma-separated file; numeric cells become numbers. */
export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError('empty CSV: no header row');
  }
  const header = lines[0].split(',');
  const rows = lines.slice(1).map((line) =>
    line.split(',').map((cell) => {
      const v = Number(cell);
      return cell !== '' && Number.isFinite(v) ? v : cell;
    }),
  );
  return { header, rows };
}

export function readCsv(path: string): Table {
  return parseCsv(fs.readFileSync(path, 'utf-8'));
}

/** Column values by header name; throws a SchemaError if absent or empty. */
export function column(table: Table, name: string): Array<number | string> {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `missing column "${name}" (have: ${table.header.join(', ')})`,
    );
  }
  if (table.rows.length === 0) {
    throw new SchemaError(`CSV has a header but no data rows`);
  }
  return table.rows.map((r) => r[idx]);
}

export function numericColumn(table: Table, name: string): number[] {
  return column(table, name).map((v, i) => {
    if (typeof v !== 'number') {
      throw new SchemaError(`column "${name}" row ${i} is not numeric: ${v}`);
    }
    return v;
  });
}
