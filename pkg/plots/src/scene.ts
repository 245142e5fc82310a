/** Backend-independent figure description, emitted to SVG and PNG. */

import { Canvas, encodePng, parseColor } from "./png.js";
import { SvgDocument } from "./svg.js";

export type Primitive =
  | { kind: "line"; x1: number; y1: number; x2: number; y2: number; color: string; width?: number; dash?: boolean }
  | { kind: "polyline"; points: [number, number][]; color: string; width?: number }
  | { kind: "polygon"; points: [number, number][]; color: string }
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill: string }
  | { kind: "marker"; x: number; y: number; style: number; color: string }
  | {
      kind: "text";
      x: number;
      y: number;
      text: string;
      size?: number;
      anchor?: "start" | "middle" | "end";
      vertical?: boolean;
    };

export interface Scene {
  width: number;
  height: number;
  primitives: Primitive[];
}

export function sceneToSvg(scene: Scene): string {
  const doc = new SvgDocument(scene.width, scene.height);
  for (const p of scene.primitives) {
    switch (p.kind) {
      case "line":
        doc.line(p.x1, p.y1, p.x2, p.y2, p.color, p.width ?? 1, p.dash ? "4 3" : undefined);
        break;
      case "polyline":
        doc.polyline(p.points, p.color, p.width ?? 1.5);
        break;
      case "polygon":
        doc.polygon(p.points, p.color);
        break;
      case "rect":
        doc.rect(p.x, p.y, p.w, p.h, p.fill);
        break;
      case "marker": {
        if (p.style % 3 === 0) {
          doc.rect(p.x - 3, p.y - 3, 6, 6, p.color);
        } else if (p.style % 3 === 1) {
          doc.circle(p.x, p.y, 3, p.color, p.color);
        } else {
          doc.polygon(
            [
              [p.x - 3.5, p.y + 3],
              [p.x + 3.5, p.y + 3],
              [p.x, p.y - 3.5],
            ],
            p.color,
            p.color,
          );
        }
        break;
      }
      case "text":
        doc.text(p.x, p.y, p.text, {
          size: p.size,
          anchor: p.anchor,
          rotate: p.vertical ? -90 : undefined,
        });
        break;
    }
  }
  return doc.render();
}

export function sceneToPng(scene: Scene): Buffer {
  const canvas = new Canvas(scene.width, scene.height);
  const ink = (c: string) => parseColor(c);
  for (const p of scene.primitives) {
    switch (p.kind) {
      case "line": {
        if (p.dash) {
          const steps = Math.ceil(Math.hypot(p.x2 - p.x1, p.y2 - p.y1) / 7);
          for (let s = 0; s < steps; s++) {
            const t0 = s / steps;
            const t1 = t0 + 0.55 / steps;
            canvas.drawLine(
              p.x1 + (p.x2 - p.x1) * t0,
              p.y1 + (p.y2 - p.y1) * t0,
              p.x1 + (p.x2 - p.x1) * Math.min(t1, 1),
              p.y1 + (p.y2 - p.y1) * Math.min(t1, 1),
              ink(p.color),
              p.width ?? 1,
            );
          }
        } else {
          canvas.drawLine(p.x1, p.y1, p.x2, p.y2, ink(p.color), p.width ?? 1);
        }
        break;
      }
      case "polyline":
        canvas.drawPolyline(p.points, ink(p.color), p.width ?? 2);
        break;
      case "polygon":
        for (let i = 0; i < p.points.length; i++) {
          const [ax, ay] = p.points[i];
          const [bx, by] = p.points[(i + 1) % p.points.length];
          canvas.drawLine(ax, ay, bx, by, ink(p.color));
        }
        break;
      case "rect":
        canvas.fillRect(p.x, p.y, p.w, p.h, ink(p.fill));
        break;
      case "marker":
        canvas.drawMarker(p.x, p.y, p.style, ink(p.color));
        break;
      case "text":
        canvas.drawText(p.x, p.y, p.text, [34, 34, 34], {
          scale: (p.size ?? 12) / 7.5,
          anchor: p.anchor ?? "start",
          vertical: p.vertical,
        });
        break;
    }
  }
  return encodePng(canvas);
}
