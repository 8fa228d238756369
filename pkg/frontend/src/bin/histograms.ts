/** Usage: histograms <histograms.csv> <out.svg> */

import { renderHistograms } from "../histograms.js";

const [histogramsPath, outPath] = process.argv.slice(2);
if (!histogramsPath || !outPath) {
  console.error("usage: histograms <histograms.csv> <out.svg>");
  process.exit(2);
}
const result = renderHistograms({ histogramsPath, outPath });
console.log(
  `wrote ${outPath} (${result.snapshots} snapshots, late-time center = ` +
  `${result.lateTimeCenter.toFixed(4)})`,
);
