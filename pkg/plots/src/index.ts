/** Public API: load a figure spec, render it, write SVG and PNG. */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { renderContourFigure } from "./contour.js";
import { FigureSpec, loadSpec, validateSpec } from "./figspec.js";
import { renderLineFigure } from "./render.js";
import { Scene, sceneToPng, sceneToSvg } from "./scene.js";

export { CsvError, parseCsv, readCsv } from "./csv.js";
export {
  ContourFigureSpec,
  FigSpecError,
  FigureSpec,
  LineFigureSpec,
  loadSpec,
  validateSpec,
} from "./figspec.js";
export { renderContourFigure } from "./contour.js";
export { collectSeries, renderLineFigure } from "./render.js";
export { Scene, sceneToPng, sceneToSvg } from "./scene.js";

export function renderFigure(spec: FigureSpec): Scene {
  return spec.type === "contour" ? renderContourFigure(spec) : renderLineFigure(spec);
}

export interface RenderedPaths {
  svg: string;
  png: string;
}

/** Render a figure spec and write `<output>.svg` and `<output>.png`. */
export function renderToFiles(spec: FigureSpec): RenderedPaths {
  const scene = renderFigure(spec);
  const svgPath = `${spec.output}.svg`;
  const pngPath = `${spec.output}.png`;
  const dir = dirname(spec.output);
  if (dir && dir !== ".") {
    mkdirSync(dir, { recursive: true });
  }
  writeFileSync(svgPath, sceneToSvg(scene));
  writeFileSync(pngPath, sceneToPng(scene));
  return { svg: svgPath, png: pngPath };
}

export function renderSpecFile(path: string): RenderedPaths {
  return renderToFiles(loadSpec(path));
}
