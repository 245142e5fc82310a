/** Field contour maps from raster CSVs, with the interface drawn at y = 0. */

import { CsvError, num, readCsv, requireColumns } from "./csv.js";
import { ContourFigureSpec } from "./figspec.js";
import { Primitive, Scene } from "./scene.js";

/** Diverging blue-white-red map on [-1, 1]. */
export function divergingColor(t: number): string {
  const clamp = (v: number) => Math.max(0, Math.min(255, Math.round(v)));
  let r: number;
  let g: number;
  let b: number;
  if (t < 0) {
    const s = Math.min(1, -t);
    r = 255 * (1 - s) + 33 * s;
    g = 255 * (1 - s) + 102 * s;
    b = 255 * (1 - s) + 172 * s;
  } else {
    const s = Math.min(1, t);
    r = 255 * (1 - s) + 178 * s;
    g = 255 * (1 - s) + 24 * s;
    b = 255 * (1 - s) + 43 * s;
  }
  return (
    "#" +
    [r, g, b]
      .map((v) => clamp(v).toString(16).padStart(2, "0"))
      .join("")
  );
}

export function renderContourFigure(spec: ContourFigureSpec): Scene {
  const table = readCsv(spec.input);
  requireColumns(table, ["x", "y", spec.field]);
  const xsSet = new Set<number>();
  const ysSet = new Set<number>();
  for (const row of table.rows) {
    xsSet.add(num(row, "x"));
    ysSet.add(num(row, "y"));
  }
  const xs = [...xsSet].sort((a, b) => a - b);
  const ys = [...ysSet].sort((a, b) => a - b);
  if (xs.length * ys.length !== table.rows.length) {
    throw new CsvError(
      `raster is not a full grid: ${xs.length} x ${ys.length} vs ${table.rows.length} rows`,
    );
  }
  const index = new Map<string, number>();
  let vmax = 0;
  for (const row of table.rows) {
    const v = num(row, spec.field);
    index.set(`${row.x}|${row.y}`, v);
    vmax = Math.max(vmax, Math.abs(v));
  }
  if (vmax === 0) vmax = 1;

  const width = spec.width ?? 560;
  const height = spec.height ?? 560;
  const margin = { left: 64, right: 24, top: 40, bottom: 50 };
  const px0 = margin.left;
  const px1 = width - margin.right;
  const py0 = height - margin.bottom;
  const py1 = margin.top;
  const toPx = (x: number) => px0 + ((x + 1) / 2) * (px1 - px0);
  const toPy = (y: number) => py0 - ((y + 1) / 2) * (py0 - py1);

  const prims: Primitive[] = [];
  const cellW = (px1 - px0) / xs.length;
  const cellH = (py0 - py1) / ys.length;
  for (const row of table.rows) {
    const x = num(row, "x");
    const y = num(row, "y");
    const v = index.get(`${row.x}|${row.y}`)!;
    prims.push({
      kind: "rect",
      x: toPx(x) - cellW / 2,
      y: toPy(y) - cellH / 2,
      w: cellW + 0.6,
      h: cellH + 0.6,
      fill: divergingColor(v / vmax),
    });
  }
  // interface
  prims.push({
    kind: "line",
    x1: toPx(-1),
    y1: toPy(0),
    x2: toPx(1),
    y2: toPy(0),
    color: "#000000",
    width: 2,
  });
  // frame and ticks
  prims.push({ kind: "line", x1: px0, y1: py0, x2: px1, y2: py0, color: "#222222" });
  prims.push({ kind: "line", x1: px0, y1: py0, x2: px0, y2: py1, color: "#222222" });
  prims.push({ kind: "line", x1: px0, y1: py1, x2: px1, y2: py1, color: "#222222" });
  prims.push({ kind: "line", x1: px1, y1: py0, x2: px1, y2: py1, color: "#222222" });
  for (const t of [-1, -0.5, 0, 0.5, 1]) {
    prims.push({
      kind: "text", x: toPx(t), y: py0 + 18, text: t.toString(), size: 11, anchor: "middle",
    });
    prims.push({
      kind: "text", x: px0 - 8, y: toPy(t) + 4, text: t.toString(), size: 11, anchor: "end",
    });
  }
  prims.push({
    kind: "text",
    x: (px0 + px1) / 2,
    y: height - 12,
    text: `${spec.field}  (range +-${vmax.toExponential(2)})`,
    size: 12,
    anchor: "middle",
  });
  if (spec.title) {
    prims.push({
      kind: "text", x: (px0 + px1) / 2, y: 22, text: spec.title, size: 14, anchor: "middle",
    });
  }
  return { width, height, primitives: prims };
}
