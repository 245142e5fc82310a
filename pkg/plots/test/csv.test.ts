import { describe, expect, it } from "vitest";

import { CsvError, num, parseCsv, requireColumns } from "../src/csv.js";

const SAMPLE = `# wavevem-study h
# config_hash=abc123
run_id,mesh,h,err_h1_rel
0,cartesian4x4,7.071067811865e-01,5.96e-01
1,cartesian8x8,3.535533905933e-01,1.05e-02
# rates_h1 5.83
`;

describe("parseCsv", () => {
  it("skips comment lines and reads the header", () => {
    const table = parseCsv(SAMPLE);
    expect(table.columns).toEqual(["run_id", "mesh", "h", "err_h1_rel"]);
    expect(table.rows).toHaveLength(2);
    expect(table.rows[1].mesh).toBe("cartesian8x8");
  });

  it("parses numeric fields", () => {
    const table = parseCsv(SAMPLE);
    expect(num(table.rows[0], "h")).toBeCloseTo(0.7071067811865, 12);
  });

  it("rejects an empty file", () => {
    expect(() => parseCsv("# only comments\n")).toThrow(CsvError);
    expect(() => parseCsv("")).toThrow(/empty CSV/);
  });

  it("rejects a header-only file", () => {
    expect(() => parseCsv("a,b,c\n")).toThrow(/no data rows/);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(/fields/);
  });

  it("reports missing columns by name", () => {
    const table = parseCsv(SAMPLE);
    expect(() => requireColumns(table, ["dofs_filtered"])).toThrow(
      /missing column dofs_filtered/,
    );
  });

  it("rejects non-numeric cells via num()", () => {
    const table = parseCsv(SAMPLE);
    expect(() => num(table.rows[0], "mesh")).toThrow(/not numeric/);
  });
});
