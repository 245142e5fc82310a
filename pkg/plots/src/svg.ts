/** Minimal deterministic SVG document builder. */

const XMLNS = "http://www.w3.org/2000/svg";

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function px(v: number): string {
  return Number(v.toFixed(2)).toString();
}

export class SvgDocument {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="${XMLNS}" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="monospace">`,
      `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash?: string) {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${px(x1)}" y1="${px(y1)}" x2="${px(x2)}" y2="${px(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"${d}/>`,
    );
  }

  polyline(points: [number, number][], stroke: string, width = 1.5) {
    const pts = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polygon(points: [number, number][], stroke: string, fill = "none") {
    const pts = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
    this.parts.push(
      `<polygon points="${pts}" fill="${fill}" stroke="${stroke}" stroke-width="1"/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string) {
    this.parts.push(
      `<rect x="${px(x)}" y="${px(y)}" width="${px(w)}" height="${px(h)}" fill="${fill}"/>`,
    );
  }

  circle(cx: number, cy: number, r: number, stroke: string, fill = "none") {
    this.parts.push(
      `<circle cx="${px(cx)}" cy="${px(cy)}" r="${px(r)}" stroke="${stroke}" fill="${fill}"/>`,
    );
  }

  text(
    x: number,
    y: number,
    content: string,
    options: { size?: number; anchor?: "start" | "middle" | "end"; rotate?: number } = {},
  ) {
    const size = options.size ?? 12;
    const anchor = options.anchor ?? "start";
    const rot = options.rotate
      ? ` transform="rotate(${options.rotate} ${px(x)} ${px(y)})"`
      : "";
    this.parts.push(
      `<text x="${px(x)}" y="${px(y)}" font-size="${size}" ` +
        `text-anchor="${anchor}" fill="#222222"${rot}>${esc(content)}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}
