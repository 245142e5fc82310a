/** Software RGBA canvas plus a minimal PNG encoder (node zlib).
 *
 * Text is drawn with the built-in stroke font so the output depends on
 * nothing outside this package; the encoding is deterministic for a given
 * zlib build.
 */

import { deflateSync } from "node:zlib";

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphStrokes } from "./strokefont.js";

export type Color = [number, number, number];

export function parseColor(hex: string): Color {
  const m = /^#([0-9a-fA-F]{6})$/.exec(hex);
  if (!m) throw new Error(`expected #rrggbb color, got ${hex}`);
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

export class Canvas {
  readonly data: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  setPixel(x: number, y: number, [r, g, b]: Color, alpha = 1) {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const i = (yi * this.width + xi) * 4;
    this.data[i] = Math.round(this.data[i] * (1 - alpha) + r * alpha);
    this.data[i + 1] = Math.round(this.data[i + 1] * (1 - alpha) + g * alpha);
    this.data[i + 2] = Math.round(this.data[i + 2] * (1 - alpha) + b * alpha);
    this.data[i + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color) {
    for (let yy = Math.max(0, Math.round(y)); yy < Math.min(this.height, Math.round(y + h)); yy++) {
      for (let xx = Math.max(0, Math.round(x)); xx < Math.min(this.width, Math.round(x + w)); xx++) {
        this.setPixel(xx, yy, color);
      }
    }
  }

  /** Anti-aliased-ish thick line by stamping little squares along it. */
  drawLine(x1: number, y1: number, x2: number, y2: number, color: Color, width = 1) {
    const steps = Math.max(1, Math.ceil(Math.hypot(x2 - x1, y2 - y1) * 2));
    const r = Math.max(0, (width - 1) / 2);
    for (let s = 0; s <= steps; s++) {
      const t = s / steps;
      const cx = x1 + (x2 - x1) * t;
      const cy = y1 + (y2 - y1) * t;
      if (r === 0) {
        this.setPixel(cx, cy, color);
      } else {
        for (let dy = -Math.ceil(r); dy <= Math.ceil(r); dy++) {
          for (let dx = -Math.ceil(r); dx <= Math.ceil(r); dx++) {
            if (dx * dx + dy * dy <= (r + 0.4) ** 2) {
              this.setPixel(cx + dx, cy + dy, color);
            }
          }
        }
      }
    }
  }

  drawPolyline(points: [number, number][], color: Color, width = 1) {
    for (let i = 1; i < points.length; i++) {
      this.drawLine(points[i - 1][0], points[i - 1][1], points[i][0], points[i][1], color, width);
    }
  }

  drawMarker(x: number, y: number, kind: number, color: Color, size = 3) {
    if (kind % 3 === 0) {
      this.fillRect(x - size / 2, y - size / 2, size, size, color);
    } else if (kind % 3 === 1) {
      for (let dy = -size; dy <= size; dy++) {
        for (let dx = -size; dx <= size; dx++) {
          if (dx * dx + dy * dy <= size * size * 0.7) this.setPixel(x + dx, y + dy, color);
        }
      }
    } else {
      this.drawLine(x - size, y + size, x + size, y + size, color);
      this.drawLine(x - size, y + size, x, y - size, color);
      this.drawLine(x + size, y + size, x, y - size, color);
    }
  }

  drawText(
    x: number,
    y: number,
    text: string,
    color: Color,
    options: { scale?: number; anchor?: "start" | "middle" | "end"; vertical?: boolean } = {},
  ) {
    const scale = options.scale ?? 1.6;
    const total = text.length * GLYPH_WIDTH * scale;
    let offset = 0;
    if (options.anchor === "middle") offset = -total / 2;
    if (options.anchor === "end") offset = -total;
    for (let i = 0; i < text.length; i++) {
      const strokes = glyphStrokes(text[i]);
      const gx = offset + i * GLYPH_WIDTH * scale;
      for (const stroke of strokes) {
        for (let s = 1; s < stroke.length; s++) {
          const [ax, ay] = stroke[s - 1];
          const [bx, by] = stroke[s];
          if (options.vertical) {
            // rotate -90 degrees: (u, v) -> (v, -u)
            this.drawLine(
              x + (ay - GLYPH_HEIGHT) * scale,
              y + gx + ax * scale,
              x + (by - GLYPH_HEIGHT) * scale,
              y + gx + bx * scale,
              color,
            );
          } else {
            this.drawLine(
              x + gx + ax * scale,
              y + (ay - GLYPH_HEIGHT) * scale,
              x + gx + bx * scale,
              y + (by - GLYPH_HEIGHT) * scale,
              color,
            );
          }
        }
      }
    }
  }
}

function crc32(buf: Uint8Array): number {
  let crc = ~0;
  for (let i = 0; i < buf.length; i++) {
    crc ^= buf[i];
    for (let b = 0; b < 8; b++) {
      crc = (crc >>> 1) ^ (0xedb88320 & -(crc & 1));
    }
  }
  return ~crc >>> 0;
}

function chunk(type: string, payload: Uint8Array): Uint8Array {
  const out = new Uint8Array(12 + payload.length);
  const view = new DataView(out.buffer);
  view.setUint32(0, payload.length);
  for (let i = 0; i < 4; i++) out[4 + i] = type.charCodeAt(i);
  out.set(payload, 8);
  const crcInput = out.subarray(4, 8 + payload.length);
  view.setUint32(8 + payload.length, crc32(crcInput));
  return out;
}

/** Encode the canvas as a PNG (8-bit RGBA, no filtering). */
export function encodePng(canvas: Canvas): Buffer {
  const { width, height, data } = canvas;
  const raw = new Uint8Array(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    raw[y * (1 + width * 4)] = 0; // filter type none
    raw.set(
      data.subarray(y * width * 4, (y + 1) * width * 4),
      y * (1 + width * 4) + 1,
    );
  }
  const header = new Uint8Array(13);
  const hv = new DataView(header.buffer);
  hv.setUint32(0, width);
  hv.setUint32(4, height);
  header[8] = 8; // bit depth
  header[9] = 6; // RGBA
  const signature = Uint8Array.from([137, 80, 78, 71, 13, 10, 26, 10]);
  const idat = deflateSync(raw, { level: 9 });
  return Buffer.concat([
    signature,
    chunk("IHDR", header),
    chunk("IDAT", new Uint8Array(idat)),
    chunk("IEND", new Uint8Array(0)),
  ]);
}
