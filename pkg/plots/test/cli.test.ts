import { existsSync, mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { main } from "../src/cli.js";

const HEADER =
  "run_id,mesh,h,n_layers,q1,q2,qt2,mu,dofs_raw,dofs_filtered," +
  "err_h1_rel,err_l2_rel,residual,seconds";

let dir: string;

beforeAll(() => {
  dir = mkdtempSync(join(tmpdir(), "wavevem-cli-"));
  writeFileSync(
    join(dir, "study.csv"),
    [
      HEADER,
      "0,cart4,7.07e-01,1,4,4,0,0,576,286,5.96e-01,4.34e-01,1e-14,0.1",
      "1,cart8,3.54e-01,2,4,4,0,0,2304,924,1.05e-02,4.46e-03,1e-14,0.3",
    ].join("\n") + "\n",
  );
  writeFileSync(
    join(dir, "fig.json"),
    JSON.stringify({
      type: "line",
      inputs: [{ path: join(dir, "study.csv") }],
      x: "h",
      y: "err_h1_rel",
      scale: "loglog",
      output: join(dir, "out", "fig"),
    }),
  );
  writeFileSync(join(dir, "broken.json"), "{not json");
});

describe("cli", () => {
  it("renders a spec to svg and png", () => {
    expect(main([join(dir, "fig.json")])).toBe(0);
    expect(existsSync(join(dir, "out", "fig.svg"))).toBe(true);
    expect(existsSync(join(dir, "out", "fig.png"))).toBe(true);
  });

  it("fails cleanly on a broken spec", () => {
    expect(main([join(dir, "broken.json")])).toBe(1);
  });

  it("wants at least one spec", () => {
    expect(main([])).toBe(2);
  });
});
