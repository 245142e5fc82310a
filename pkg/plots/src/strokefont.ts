/** A small vector stroke font on a 4 x 6 grid for PNG labels.
 *
 * Glyphs are polylines in a coordinate system with x in [0, 4] and
 * y in [0, 6] (y grows downward). Lowercase input is rendered with the
 * uppercase shapes; unknown characters fall back to a centered dot.
 */

type Stroke = [number, number][];

const G: Record<string, Stroke[]> = {
  "0": [[[0, 1], [0, 5], [1, 6], [3, 6], [4, 5], [4, 1], [3, 0], [1, 0], [0, 1]], [[0, 5], [4, 1]]],
  "1": [[[1, 1], [2, 0], [2, 6]], [[1, 6], [3, 6]]],
  "2": [[[0, 1], [1, 0], [3, 0], [4, 1], [4, 2], [0, 6], [4, 6]]],
  "3": [[[0, 0], [4, 0], [2, 2], [4, 4], [4, 5], [3, 6], [1, 6], [0, 5]]],
  "4": [[[3, 6], [3, 0], [0, 4], [4, 4]]],
  "5": [[[4, 0], [0, 0], [0, 3], [3, 3], [4, 4], [4, 5], [3, 6], [0, 6]]],
  "6": [[[3, 0], [1, 0], [0, 1], [0, 5], [1, 6], [3, 6], [4, 5], [4, 4], [3, 3], [0, 3]]],
  "7": [[[0, 0], [4, 0], [1, 6]]],
  "8": [[[1, 0], [3, 0], [4, 1], [4, 2], [3, 3], [1, 3], [0, 4], [0, 5], [1, 6], [3, 6], [4, 5], [4, 4], [3, 3]], [[1, 3], [0, 2], [0, 1], [1, 0]]],
  "9": [[[1, 6], [3, 6], [4, 5], [4, 1], [3, 0], [1, 0], [0, 1], [0, 2], [1, 3], [4, 3]]],
  A: [[[0, 6], [2, 0], [4, 6]], [[1, 4], [3, 4]]],
  B: [[[0, 0], [0, 6], [3, 6], [4, 5], [4, 4], [3, 3], [0, 3]], [[0, 0], [3, 0], [4, 1], [4, 2], [3, 3]]],
  C: [[[4, 1], [3, 0], [1, 0], [0, 1], [0, 5], [1, 6], [3, 6], [4, 5]]],
  D: [[[0, 0], [0, 6], [3, 6], [4, 5], [4, 1], [3, 0], [0, 0]]],
  E: [[[4, 0], [0, 0], [0, 6], [4, 6]], [[0, 3], [3, 3]]],
  F: [[[4, 0], [0, 0], [0, 6]], [[0, 3], [3, 3]]],
  G: [[[4, 1], [3, 0], [1, 0], [0, 1], [0, 5], [1, 6], [3, 6], [4, 5], [4, 3], [2, 3]]],
  H: [[[0, 0], [0, 6]], [[4, 0], [4, 6]], [[0, 3], [4, 3]]],
  I: [[[1, 0], [3, 0]], [[2, 0], [2, 6]], [[1, 6], [3, 6]]],
  J: [[[3, 0], [3, 5], [2, 6], [1, 6], [0, 5]]],
  K: [[[0, 0], [0, 6]], [[4, 0], [0, 3], [4, 6]]],
  L: [[[0, 0], [0, 6], [4, 6]]],
  M: [[[0, 6], [0, 0], [2, 3], [4, 0], [4, 6]]],
  N: [[[0, 6], [0, 0], [4, 6], [4, 0]]],
  O: [[[1, 0], [3, 0], [4, 1], [4, 5], [3, 6], [1, 6], [0, 5], [0, 1], [1, 0]]],
  P: [[[0, 6], [0, 0], [3, 0], [4, 1], [4, 2], [3, 3], [0, 3]]],
  Q: [[[1, 0], [3, 0], [4, 1], [4, 5], [3, 6], [1, 6], [0, 5], [0, 1], [1, 0]], [[2, 4], [4, 6]]],
  R: [[[0, 6], [0, 0], [3, 0], [4, 1], [4, 2], [3, 3], [0, 3]], [[2, 3], [4, 6]]],
  S: [[[4, 1], [3, 0], [1, 0], [0, 1], [0, 2], [1, 3], [3, 3], [4, 4], [4, 5], [3, 6], [1, 6], [0, 5]]],
  T: [[[0, 0], [4, 0]], [[2, 0], [2, 6]]],
  U: [[[0, 0], [0, 5], [1, 6], [3, 6], [4, 5], [4, 0]]],
  V: [[[0, 0], [2, 6], [4, 0]]],
  W: [[[0, 0], [1, 6], [2, 3], [3, 6], [4, 0]]],
  X: [[[0, 0], [4, 6]], [[4, 0], [0, 6]]],
  Y: [[[0, 0], [2, 3], [4, 0]], [[2, 3], [2, 6]]],
  Z: [[[0, 0], [4, 0], [0, 6], [4, 6]]],
  ".": [[[2, 5.4], [2, 6]]],
  ",": [[[2.2, 5], [1.6, 6.5]]],
  "-": [[[0.5, 3], [3.5, 3]]],
  "+": [[[2, 1], [2, 5]], [[0, 3], [4, 3]]],
  "=": [[[0.5, 2], [3.5, 2]], [[0.5, 4], [3.5, 4]]],
  "/": [[[0, 6], [4, 0]]],
  "(": [[[3, 0], [2, 1], [2, 5], [3, 6]]],
  ")": [[[1, 0], [2, 1], [2, 5], [1, 6]]],
  "[": [[[3, 0], [2, 0], [2, 6], [3, 6]]],
  "]": [[[1, 0], [2, 0], [2, 6], [1, 6]]],
  ":": [[[2, 1.4], [2, 2]], [[2, 4.4], [2, 5]]],
  "^": [[[1, 1.5], [2, 0.5], [3, 1.5]]],
  "*": [[[2, 1], [2, 5]], [[0.5, 2], [3.5, 4]], [[3.5, 2], [0.5, 4]]],
  "%": [[[0, 6], [4, 0]], [[0.8, 0.4], [0.8, 1.4]], [[3.2, 4.6], [3.2, 5.6]]],
  "_": [[[0, 6], [4, 6]]],
  "<": [[[3.5, 1], [0.5, 3], [3.5, 5]]],
  ">": [[[0.5, 1], [3.5, 3], [0.5, 5]]],
  "|": [[[2, 0], [2, 6]]],
  "'": [[[2, 0], [2, 1.5]]],
  " ": [],
};

const FALLBACK: Stroke[] = [[[1.8, 2.8], [2.2, 3.2]]];

export const GLYPH_WIDTH = 5; // grid advance including spacing
export const GLYPH_HEIGHT = 6;

export function glyphStrokes(ch: string): Stroke[] {
  const key = ch in G ? ch : ch.toUpperCase();
  return G[key] ?? FALLBACK;
}

/** Approximate pixel width of a string at the given scale. */
export function textWidth(text: string, scale: number): number {
  return text.length * GLYPH_WIDTH * scale;
}
