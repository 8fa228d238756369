/** Usage: trajectories <mean.csv> <out.svg> [trajectories.csv] */

import { renderTrajectories } from "../trajectories.js";

const [meanPath, outPath, trajectoriesPath] = process.argv.slice(2);
if (!meanPath || !outPath) {
  console.error("usage: trajectories <mean.csv> <out.svg> [trajectories.csv]");
  process.exit(2);
}
const result = renderTrajectories({ meanPath, trajectoriesPath, outPath });
console.log(
  `wrote ${outPath} (fan of ${result.fanSize}, final M2 of mean = ` +
  `${result.finalSreOfMean.toFixed(4)})`,
);
