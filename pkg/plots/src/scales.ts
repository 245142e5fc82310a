/** Axis scales and tick generation for linear and logarithmic axes. */

export interface AxisScale {
  /** data coordinate -> pixel coordinate */
  toPixel(value: number): number;
  ticks: { value: number; label: string }[];
  min: number;
  max: number;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const exp = Math.floor(Math.log10(Math.abs(v)));
  if (exp >= -3 && exp <= 3) {
    const s = v.toFixed(Math.max(0, 2 - exp));
    return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
  }
  const mant = v / 10 ** exp;
  const m = Math.abs(mant - 1) < 1e-9 ? "" : `${mant.toFixed(1).replace(/\.0$/, "")}x`;
  return `${m}1e${exp}`;
}

export function linearScale(
  lo: number,
  hi: number,
  pixelLo: number,
  pixelHi: number,
): AxisScale {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const span = hi - lo;
  const step = niceStep(span / 5);
  const ticks: { value: number; label: string }[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step) {
    ticks.push({ value: t, label: fmt(Math.abs(t) < 1e-12 * span ? 0 : t) });
  }
  return {
    toPixel: (v) => pixelLo + ((v - lo) / span) * (pixelHi - pixelLo),
    ticks,
    min: lo,
    max: hi,
  };
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const norm = raw / mag;
  if (norm <= 1.5) return mag;
  if (norm <= 3.5) return 2 * mag;
  if (norm <= 7.5) return 5 * mag;
  return 10 * mag;
}

export function logScale(
  lo: number,
  hi: number,
  pixelLo: number,
  pixelHi: number,
): AxisScale {
  if (!(lo > 0) || !(hi > 0)) {
    throw new Error("log scale requires positive data");
  }
  if (hi / lo < 1.0001) {
    hi = lo * 10;
  }
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const ticks: { value: number; label: string }[] = [];
  const decades = Math.ceil(lhi) - Math.floor(llo);
  const stride = decades > 8 ? Math.ceil(decades / 8) : 1;
  for (let e = Math.ceil(llo); e <= Math.floor(lhi + 1e-12); e += stride) {
    ticks.push({ value: 10 ** e, label: `1e${e}` });
  }
  if (ticks.length < 2) {
    // narrow range: fall back to a few linear ticks with log placement
    const lin = linearScale(lo, hi, 0, 1);
    for (const t of lin.ticks) {
      if (t.value > 0) ticks.push(t);
    }
  }
  return {
    toPixel: (v) =>
      pixelLo + ((Math.log10(v) - llo) / (lhi - llo)) * (pixelHi - pixelLo),
    ticks,
    min: lo,
    max: hi,
  };
}

export function dataRange(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!Number.isFinite(lo)) {
    throw new Error("no finite data to plot");
  }
  return [lo, hi];
}

/** Pad a range multiplicatively (log axes) or additively (linear axes). */
export function padRange(
  [lo, hi]: [number, number],
  logAxis: boolean,
  factor = 0.08,
): [number, number] {
  if (logAxis) {
    const r = (hi / lo) ** factor;
    return [lo / r, hi * r];
  }
  const d = (hi - lo || Math.abs(lo) || 1) * factor;
  return [lo - d, hi + d];
}
