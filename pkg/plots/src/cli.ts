#!/usr/bin/env node
/** CLI: `wavevem-plot <figure-spec.json> [...more specs]` */

import { renderSpecFile } from "./index.js";

export function main(argv: string[]): number {
  const specs = argv.filter((a) => !a.startsWith("-"));
  if (argv.includes("-h") || argv.includes("--help") || specs.length === 0) {
    process.stderr.write(
      "usage: wavevem-plot <figure-spec.json> [...]\n" +
        "Renders each figure spec to <output>.svg and <output>.png.\n",
    );
    return specs.length === 0 ? 2 : 0;
  }
  for (const spec of specs) {
    try {
      const paths = renderSpecFile(spec);
      process.stdout.write(`${spec} -> ${paths.svg}, ${paths.png}\n`);
    } catch (err) {
      process.stderr.write(`error rendering ${spec}: ${(err as Error).message}\n`);
      return 1;
    }
  }
  return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
