import assert from 'node:assert/strict';
import { test } from 'node:test';

import { column, numericColumn, parseCsv, SchemaError } from '../src/csv.js';

test('parses numeric and string cells', () => {
  const t = parseCsv('a,b,label\n1.5,-2,L\n0.25,3e2,S\n');
  assert.deepEqual(t.header, ['a', 'b', 'label']);
  assert.deepEqual(t.rows, [
    [1.5, -2, 'L'],
    [0.25, 300, 'S'],
  ]);
});

test('empty text is a schema error', () => {
  assert.throws(() => parseCsv(''), SchemaError);
});

test('missing column is a schema error naming the column', () => {
  const t = parseCsv('a,b\n1,2\n');
  assert.throws(() => column(t, 'P2'), /missing column "P2"/);
});

test('header without rows is a schema error', () => {
  const t = parseCsv('a,b\n');
  assert.throws(() => column(t, 'a'), /no data rows/);
});

test('numericColumn rejects strings', () => {
  const t = parseCsv('a\nx\n');
  assert.throws(() => numericColumn(t, 'a'), /not numeric/);
});
