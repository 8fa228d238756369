/**
 * Minimal SVG scene builder and color helpers for static figure output.
 *
 * Everything renders to a plain SVG string so the scripts run headless;
 * no DOM or canvas is required.
 */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const f = ((v: number) => r0 + ((v - d0) / (d1 - d0)) * (r1 - r0)) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

/** Anchor colors of the viridis map, interpolated linearly in RGB. */
const VIRIDIS: Array<[number, number, number]> = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

export function viridis(t: number): string {
  const u = Math.min(Math.max(t, 0), 1) * (VIRIDIS.length - 1);
  const i = Math.min(Math.floor(u), VIRIDIS.length - 2);
  const f = u - i;
  const mix = (a: number, b: number) => Math.round(a + f * (b - a));
  const [r, g, b] = [0, 1, 2].map((k) => mix(VIRIDIS[i][k], VIRIDIS[i + 1][k]));
  return `rgb(${r},${g},${b})`;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtAttrs(attrs: Record<string, string | number>): string {
  return Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
}

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  rect(x: number, y: number, w: number, h: number, attrs: Record<string, string | number> = {}): void {
    this.parts.push(`<rect x="${x}" y="${y}" width="${w}" height="${h}" ${fmtAttrs(attrs)}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, attrs: Record<string, string | number> = {}): void {
    this.parts.push(`<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" ${fmtAttrs(attrs)}/>`);
  }

  circle(cx: number, cy: number, r: number, attrs: Record<string, string | number> = {}): void {
    this.parts.push(`<circle cx="${cx}" cy="${cy}" r="${r}" ${fmtAttrs(attrs)}/>`);
  }

  polyline(points: Array<[number, number]>, attrs: Record<string, string | number> = {}): void {
    const pts = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    this.parts.push(`<polyline points="${pts}" fill="none" ${fmtAttrs(attrs)}/>`);
  }

  text(x: number, y: number, content: string, attrs: Record<string, string | number> = {}): void {
    this.parts.push(`<text x="${x}" y="${y}" ${fmtAttrs(attrs)}>${esc(content)}</text>`);
  }

  /** Five-pointed star marker, used for located optima. */
  star(cx: number, cy: number, r: number, attrs: Record<string, string | number> = {}): void {
    const pts: Array<[number, number]> = [];
    for (let k = 0; k < 10; k++) {
      const rad = k % 2 === 0 ? r : 0.4 * r;
      const a = (Math.PI / 5) * k - Math.PI / 2;
      pts.push([cx + rad * Math.cos(a), cy + rad * Math.sin(a)]);
    }
    const d = pts.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    this.parts.push(`<polygon class="star" points="${d}" ${fmtAttrs(attrs)}/>`);
  }

  toString(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" ` +
      `height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

/** Tick positions: round steps covering the domain with about n ticks. */
export function ticks(lo: number, hi: number, n = 5): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const best = candidates.find((s) => span / s <= n) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / best) * best; v <= hi + 1e-12; v += best) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}
