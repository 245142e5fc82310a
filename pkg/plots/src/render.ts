/** Convergence-curve figures: log-log and semilog error plots. */

import { num, readCsv, requireColumns } from "./csv.js";
import {
  LineFigureSpec,
  xAxisLabel,
  xColumn,
  xTransform,
} from "./figspec.js";
import { AxisScale, dataRange, linearScale, logScale, padRange } from "./scales.js";
import { Primitive, Scene } from "./scene.js";

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#17becf",
  "#8c564b",
  "#e377c2",
];

interface Series {
  label: string;
  points: [number, number][];
}

export function collectSeries(spec: LineFigureSpec): Series[] {
  const xcol = xColumn(spec.x);
  const out: Series[] = [];
  for (const input of spec.inputs) {
    const table = readCsv(input.path);
    requireColumns(table, [xcol, spec.y]);
    const groups = new Map<string, [number, number][]>();
    for (const row of table.rows) {
      const key = input.group_by ? row[input.group_by] ?? "" : "";
      const x = xTransform(spec.x, num(row, xcol));
      const y = num(row, spec.y);
      if (!groups.has(key)) groups.set(key, []);
      groups.get(key)!.push([x, y]);
    }
    const keys = [...groups.keys()].sort();
    for (const key of keys) {
      const base = input.label ?? input.path.replace(/^.*\//, "").replace(/\.csv$/, "");
      const label = key === "" ? base : `${base} ${input.group_by}=${key}`;
      const points = groups.get(key)!;
      points.sort((a, b) => a[0] - b[0]);
      out.push({ label, points });
    }
  }
  return out;
}

export function renderLineFigure(spec: LineFigureSpec): Scene {
  const width = spec.width ?? 640;
  const height = spec.height ?? 460;
  const margin = { left: 78, right: 24, top: 40, bottom: 58 };
  const series = collectSeries(spec);

  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1])).filter((v) => v > 0);
  if (ys.length === 0) {
    throw new Error("no positive error values to plot on a log axis");
  }
  const logX = spec.scale === "loglog";
  const [x0, x1] = padRange(dataRange(xs), logX);
  const [y0, y1] = padRange(dataRange(ys), true);

  const px0 = margin.left;
  const px1 = width - margin.right;
  const py0 = height - margin.bottom;
  const py1 = margin.top;
  const xscale: AxisScale = logX
    ? logScale(x0, x1, px0, px1)
    : linearScale(x0, x1, px0, px1);
  const yscale = logScale(y0, y1, py0, py1);

  const prims: Primitive[] = [];
  // frame and grid
  for (const t of xscale.ticks) {
    const x = xscale.toPixel(t.value);
    prims.push({ kind: "line", x1: x, y1: py0, x2: x, y2: py1, color: "#dddddd" });
    prims.push({ kind: "line", x1: x, y1: py0, x2: x, y2: py0 + 4, color: "#222222" });
    prims.push({
      kind: "text", x, y: py0 + 18, text: t.label, size: 11, anchor: "middle",
    });
  }
  for (const t of yscale.ticks) {
    const y = yscale.toPixel(t.value);
    prims.push({ kind: "line", x1: px0, y1: y, x2: px1, y2: y, color: "#dddddd" });
    prims.push({ kind: "line", x1: px0 - 4, y1: y, x2: px0, y2: y, color: "#222222" });
    prims.push({
      kind: "text", x: px0 - 7, y: y + 4, text: t.label, size: 11, anchor: "end",
    });
  }
  prims.push({ kind: "line", x1: px0, y1: py0, x2: px1, y2: py0, color: "#222222" });
  prims.push({ kind: "line", x1: px0, y1: py0, x2: px0, y2: py1, color: "#222222" });

  // series
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts: [number, number][] = s.points
      .filter(([, y]) => y > 0)
      .map(([x, y]) => [xscale.toPixel(x), yscale.toPixel(y)]);
    prims.push({ kind: "polyline", points: pts, color, width: 1.6 });
    for (const [x, y] of pts) {
      prims.push({ kind: "marker", x, y, style: i, color });
    }
  });

  // reference slope triangles on log-log axes
  if (logX && spec.reference_slopes && spec.reference_slopes.length > 0) {
    const firstSeries = series[0].points.filter(([, y]) => y > 0);
    const xa = 10 ** (Math.log10(x0) + 0.45 * Math.log10(x1 / x0));
    const xb = 10 ** (Math.log10(x0) + 0.65 * Math.log10(x1 / x0));
    let yBase = 10 ** (Math.log10(y0) + 0.25 * Math.log10(y1 / y0));
    void firstSeries;
    for (const slope of spec.reference_slopes) {
      const ya = yBase;
      const yb = ya * (xb / xa) ** slope;
      const tri: [number, number][] = [
        [xscale.toPixel(xa), yscale.toPixel(ya)],
        [xscale.toPixel(xb), yscale.toPixel(ya)],
        [xscale.toPixel(xb), yscale.toPixel(yb)],
      ];
      prims.push({ kind: "polygon", points: tri, color: "#555555" });
      prims.push({
        kind: "text",
        x: xscale.toPixel(xb) + 6,
        y: (yscale.toPixel(ya) + yscale.toPixel(yb)) / 2 + 4,
        text: String(slope),
        size: 11,
      });
      yBase *= 4;
    }
  }

  // legend
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const lx = px1 - 215;
    const ly = py1 + 16 + i * 16;
    prims.push({ kind: "line", x1: lx, y1: ly - 4, x2: lx + 22, y2: ly - 4, color, width: 2 });
    prims.push({ kind: "marker", x: lx + 11, y: ly - 4, style: i, color });
    prims.push({ kind: "text", x: lx + 28, y: ly, text: s.label, size: 11 });
  });

  // axis labels and title
  prims.push({
    kind: "text",
    x: (px0 + px1) / 2,
    y: height - 14,
    text: xAxisLabel(spec.x),
    size: 13,
    anchor: "middle",
  });
  prims.push({
    kind: "text",
    x: 20,
    y: (py0 + py1) / 2,
    text: spec.y === "err_h1_rel" ? "relative H1 error" : "relative L2 error",
    size: 13,
    anchor: "middle",
    vertical: true,
  });
  if (spec.title) {
    prims.push({
      kind: "text",
      x: (px0 + px1) / 2,
      y: 22,
      text: spec.title,
      size: 14,
      anchor: "middle",
    });
  }
  return { width, height, primitives: prims };
}
