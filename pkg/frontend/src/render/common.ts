/** Small DOM/SVG helpers shared by the panel renderers. */

const SVG_NS = "http://www.w3.org/2000/svg";

// categorical palette shared by every view, indexed by asset type order
const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#9c755f",
];

export function typeColor(assetTypes: string[], assetType: string): string {
  const i = assetTypes.indexOf(assetType);
  return PALETTE[(i >= 0 ? i : PALETTE.length - 1) % PALETTE.length];
}

type Attrs = Record<string, string | number>;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  node.append(...children);
  return node;
}

export function svg(tag: string, attrs: Attrs = {}, ...children: Array<Node | string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  node.append(...children);
  return node;
}

/** Linear map from [d0, d1] to [r0, r1]; collapses to midpoint on a flat domain. */
export function scaleLinear(d0: number, d1: number, r0: number, r1: number) {
  const span = d1 - d0;
  return (v: number) => (span === 0 ? (r0 + r1) / 2 : r0 + ((v - d0) / span) * (r1 - r0));
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return values.length ? [lo, hi] : [0, 1];
}

/** Single-hue ramp, darker for larger t in [0, 1]; used by the rank view. */
export function ramp(t: number, hue: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const light = 88 - clamped * 55;
  return `hsl(${hue}, 62%, ${light}%)`;
}

export function formatNumber(v: number): string {
  if (Number.isInteger(v)) return String(v);
  return Math.abs(v) < 0.001 ? v.toExponential(2) : v.toFixed(4);
}
