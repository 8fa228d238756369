/** Usage: phase-diagram <matrix.csv> <axes.csv> <out.svg> [sweep.meta.json] */

import { renderPhaseDiagram } from "../phaseDiagram.js";

const [matrixPath, axesPath, outPath, metaPath] = process.argv.slice(2);
if (!matrixPath || !axesPath || !outPath) {
  console.error("usage: phase-diagram <matrix.csv> <axes.csv> <out.svg> [sweep.meta.json]");
  process.exit(2);
}
const result = renderPhaseDiagram({ matrixPath, axesPath, metaPath, outPath });
console.log(
  `wrote ${outPath} (${result.nanCells} masked cells` +
  (result.star ? `, star at γJ=${result.star.gamma}, Γ/J=${result.star.Gamma})` : ")"),
);
