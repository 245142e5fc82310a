/** Figure specifications: what to read, which axes, how to scale. */

import { readFileSync } from "node:fs";

export type XSelector = "h" | "q" | "dofs" | "sqrt_dofs";
export type YSelector = "err_h1_rel" | "err_l2_rel";
export type Scale = "loglog" | "semilogy";

export interface SeriesSpec {
  path: string;
  label?: string;
  /** split rows of one CSV into one series per distinct value of a column */
  group_by?: string;
}

export interface LineFigureSpec {
  type: "line";
  title?: string;
  inputs: SeriesSpec[];
  x: XSelector;
  y: YSelector;
  scale: Scale;
  /** log-log reference triangles with these slopes */
  reference_slopes?: number[];
  output: string;
  width?: number;
  height?: number;
}

export interface ContourFigureSpec {
  type: "contour";
  title?: string;
  input: string;
  /** which raster column to draw */
  field: "re_exact" | "im_exact" | "re_proj" | "im_proj";
  output: string;
  width?: number;
  height?: number;
}

export type FigureSpec = LineFigureSpec | ContourFigureSpec;

export class FigSpecError extends Error {}

const X_SELECTORS = ["h", "q", "dofs", "sqrt_dofs"];
const Y_SELECTORS = ["err_h1_rel", "err_l2_rel"];
const SCALES = ["loglog", "semilogy"];
const FIELDS = ["re_exact", "im_exact", "re_proj", "im_proj"];

export function validateSpec(raw: unknown): FigureSpec {
  if (typeof raw !== "object" || raw === null) {
    throw new FigSpecError("figure spec must be a JSON object");
  }
  const spec = raw as Record<string, unknown>;
  if (spec.type === "contour") {
    if (typeof spec.input !== "string") {
      throw new FigSpecError("contour spec needs an input CSV path");
    }
    if (!FIELDS.includes(spec.field as string)) {
      throw new FigSpecError(`contour field must be one of ${FIELDS.join(", ")}`);
    }
    if (typeof spec.output !== "string") {
      throw new FigSpecError("spec needs an output path stem");
    }
    return spec as unknown as ContourFigureSpec;
  }
  if (spec.type !== "line") {
    throw new FigSpecError(`unknown figure type ${String(spec.type)}`);
  }
  if (!Array.isArray(spec.inputs) || spec.inputs.length === 0) {
    throw new FigSpecError("line spec needs a nonempty inputs list");
  }
  for (const input of spec.inputs) {
    if (typeof (input as SeriesSpec).path !== "string") {
      throw new FigSpecError("every input needs a CSV path");
    }
  }
  if (!X_SELECTORS.includes(spec.x as string)) {
    throw new FigSpecError(`x selector must be one of ${X_SELECTORS.join(", ")}`);
  }
  if (!Y_SELECTORS.includes(spec.y as string)) {
    throw new FigSpecError(`y selector must be one of ${Y_SELECTORS.join(", ")}`);
  }
  if (!SCALES.includes(spec.scale as string)) {
    throw new FigSpecError(`scale must be one of ${SCALES.join(", ")}`);
  }
  if (typeof spec.output !== "string") {
    throw new FigSpecError("spec needs an output path stem");
  }
  return spec as unknown as LineFigureSpec;
}

export function loadSpec(path: string): FigureSpec {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new FigSpecError(`cannot read figure spec ${path}: ${String(err)}`);
  }
  return validateSpec(parsed);
}

/** Map the x selector to the underlying CSV column. */
export function xColumn(x: XSelector): string {
  switch (x) {
    case "h":
      return "h";
    case "q":
      return "q2";
    case "dofs":
    case "sqrt_dofs":
      return "dofs_filtered";
  }
}

export function xTransform(x: XSelector, value: number): number {
  return x === "sqrt_dofs" ? Math.sqrt(value) : value;
}

export function xAxisLabel(x: XSelector): string {
  switch (x) {
    case "h":
      return "mesh size h";
    case "q":
      return "effective degree q";
    case "dofs":
      return "degrees of freedom";
    case "sqrt_dofs":
      return "sqrt(degrees of freedom)";
  }
}
