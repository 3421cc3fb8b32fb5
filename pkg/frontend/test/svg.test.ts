import assert from 'node:assert/strict';
import { test } from 'node:test';

import { seriesColor, viridis } from '../src/color.js';
import { heatmap, Scale, Svg } from '../src/svg.js';

test('scale maps endpoints and midpoints', () => {
  const s = new Scale(0, 10, 100, 300);
  assert.equal(s.map(0), 100);
  assert.equal(s.map(10), 300);
  assert.equal(s.map(5), 200);
});

test('degenerate scale maps to the middle', () => {
  const s = new Scale(2, 2, 0, 100);
  assert.equal(s.map(2), 50);
});

test('viridis endpoints and clamping', () => {
  assert.equal(viridis(0), '#440154');
  assert.equal(viridis(1), '#fde725');
  assert.equal(viridis(-5), viridis(0));
  assert.equal(viridis(7), viridis(1));
});

test('series colors cycle', () => {
  assert.equal(seriesColor(0), seriesColor(8));
});

test('svg document structure', () => {
  const svg = new Svg(100, 50);
  svg.line(0, 0, 10, 10, '#000');
  svg.text(5, 5, 'a < b');
  const out = svg.toString();
  assert.match(out, /^<svg xmlns/);
  assert.match(out, /<\/svg>\s*$/);
  assert.match(out, /a &lt; b/);
});

test('heatmap draws one rect per cell plus the range note', () => {
  const svg = new Svg(200, 200);
  heatmap(svg, [[0, 1], [2, 3], [4, 5]], { x: 10, y: 10, width: 90, height: 60 });
  const out = svg.toString();
  const rects = out.match(/<rect /g) ?? [];
  assert.equal(rects.length, 1 + 6); // background + 3x2 cells
  assert.match(out, /range \[0\.00, 5\.00\]/);
});
