import assert from 'node:assert/strict';
import * as fs from 'node:fs';
import * as os from 'node:os';
import * as path from 'node:path';
import { test } from 'node:test';

import { main } from '../src/cli.js';
import { resolveRenderer } from '../src/figures.js';
import { SchemaError } from '../src/csv.js';

const HERE = path.dirname(new URL(import.meta.url).pathname);
const TESTDATA = path.join(HERE, '..', '..', 'testdata');
const OUT = fs.mkdtempSync(path.join(os.tmpdir(), 'figplots-'));

function td(...parts: string[]): string {
  return path.join(TESTDATA, ...parts);
}

function render(figure: string, inputs: string[], extra: string[] = []): string {
  const out = path.join(OUT, `${figure}-${Math.random().toString(36).slice(2)}.svg`);
  const rc = main(['--figure', figure, '--in', inputs.join(','), '--out', out, ...extra]);
  assert.equal(rc, 0, `figplots --figure ${figure} failed`);
  const text = fs.readFileSync(out, 'utf-8');
  assert.match(text, /^<svg /);
  assert.match(text, /<\/svg>\s*$/);
  return text;
}

test('fig3: dispersion lines from stored line CSVs', () => {
  const text = render('fig3', [td('line_n2_lam0.csv'), td('line_n40_lam01.csv')]);
  const curves = text.match(/<polyline /g) ?? [];
  assert.ok(curves.length >= 2, 'expected one curve per input CSV');
});

test('fig8: cross-stripe slice of the stored lane endstate', () => {
  const text = render('fig8', [td('run_lane', 'final_f')]);
  const rects = text.match(/<rect /g) ?? [];
  assert.ok(rects.length >= 31 * 21, 'expected one cell per (coordinate, angle)');
  assert.match(text, /theta/);
});

test('fig10: P2 time series from four stored runs', () => {
  const text = render('fig10', [
    td('run_spot', 'series.csv'), td('run_lane', 'series.csv'),
    td('run_bi_a', 'series.csv'), td('run_bi_b', 'series.csv')]);
  assert.ok((text.match(/<polyline /g) ?? []).length >= 4);
});

test('fig11: phase diagram with the instability line overlaid', () => {
  const text = render('fig11', [td('sweep')],
    ['--line', td('line_n40_lam01.csv')]);
  assert.ok((text.match(/<circle /g) ?? []).length >= 8, 'two panels x four pairs');
  assert.ok((text.match(/<polyline /g) ?? []).length >= 1, 'overlay line');
});

test('fig2: particle trajectories', () => {
  const text = render('fig2', [td('particles')]);
  assert.ok((text.match(/<polyline /g) ?? []).length >= 8);
});

test('fig4: eigenfunction heatmap', () => {
  const text = render('fig4', [td('eigfun')]);
  assert.ok((text.match(/<rect /g) ?? []).length >= 64 * 64);
  assert.match(text, /Re sigma/);
});

test('fig6: evolution panels with quivers', () => {
  const text = render('fig6', [td('run_lane')]);
  assert.ok((text.match(/range \[/g) ?? []).length >= 2, 'several panels');
  assert.ok((text.match(/<line /g) ?? []).length > 100, 'quiver arrows');
});

test('fig9: bistability pair', () => {
  const text = render('fig9', [td('run_bi_a'), td('run_bi_b')]);
  assert.ok((text.match(/range \[/g) ?? []).length === 2);
});

test('fig12: stationary state heatmap', () => {
  const text = render('fig12', [td('stationary')]);
  assert.match(text, /stationary f/);
  assert.match(text, /residual/);
});

test('fig13: sweep mosaic for one seed', () => {
  const text = render('fig13', [td('sweep')], ['--seed', '706']);
  assert.ok((text.match(/range \[/g) ?? []).length === 4, '2x2 parameter grid');
  assert.match(text, /seed 706/);
});

test('family names resolve and unknown figures do not', () => {
  assert.equal(resolveRenderer('phase'), resolveRenderer('fig11'));
  assert.throws(() => resolveRenderer('fig99'), SchemaError);
});

test('empty sweep CSV is a schema error and writes no image', () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), 'empty-'));
  fs.writeFileSync(path.join(dir, 'phase.csv'),
    'gamma,Pe,d_fstar_max,P2_mean,label,n_ok\n');
  const out = path.join(dir, 'img.svg');
  const rc = main(['--figure', 'fig11', '--in', dir, '--out', out]);
  assert.equal(rc, 1);
  assert.ok(!fs.existsSync(out), 'no image should be written');
});

test('rendering is deterministic and does not mutate inputs', () => {
  const src = td('run_lane', 'final_f.f64');
  const before = fs.readFileSync(src);
  const a = render('fig8', [td('run_lane', 'final_f')]);
  const b = render('fig8', [td('run_lane', 'final_f')]);
  assert.equal(a, b);
  assert.deepEqual(fs.readFileSync(src), before);
});
