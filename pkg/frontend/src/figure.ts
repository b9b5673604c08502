/** Figure assembly: curves from sweep CSVs plus reference-slope guide lines. */

import { readFileSync } from "node:fs";
import { parseSweepCsv, SchemaError, SweepPoint } from "./csv";

export interface CurveSpec {
  path: string;
  label: string;
}

export interface GuideSpec {
  slope: number; // dlog2T / dlog2N in data coordinates
  label?: string;
}

export interface FigureSpec {
  title?: string;
  x_label?: string;
  y_label?: string;
  curves: CurveSpec[];
  guides?: GuideSpec[];
}

export interface Curve {
  label: string;
  points: SweepPoint[];
}

const WIDTH = 960;
const HEIGHT = 720;
const MARGIN = { left: 80, right: 220, top: 60, bottom: 70 };

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
  "#aec7e8", "#ff9896", "#98df8a", "#c5b0d5", "#ffbb78",
];

/** Fixed two-decimal formatting keeps the SVG byte-deterministic. */
function px(value: number): string {
  return value.toFixed(2);
}

export function loadFigureSpec(text: string): FigureSpec {
  let spec: unknown;
  try {
    spec = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`figure spec is not valid JSON: ${String(err)}`);
  }
  const fig = spec as FigureSpec;
  if (!Array.isArray(fig.curves) || fig.curves.length === 0) {
    throw new SchemaError("figure spec needs at least one curve");
  }
  for (const c of fig.curves) {
    if (typeof c.path !== "string" || typeof c.label !== "string") {
      throw new SchemaError("every curve needs a string path and label");
    }
  }
  for (const g of fig.guides ?? []) {
    if (typeof g.slope !== "number" || !Number.isFinite(g.slope)) {
      throw new SchemaError("every guide needs a finite numeric slope");
    }
  }
  return fig;
}

export function loadCurves(spec: FigureSpec): Curve[] {
  const curves = spec.curves.map((c) => {
    const text = readFileSync(c.path, "utf-8");
    const points = parseSweepCsv(text, c.path);
    if (points.length < 2) {
      throw new SchemaError(`${c.path}: curve "${c.label}" has fewer than 2 points`);
    }
    return { label: c.label, points };
  });
  curves.sort((a, b) => (a.label < b.label ? -1 : a.label > b.label ? 1 : 0));
  return curves;
}

interface Scale {
  (value: number): number;
}

function makeScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  return (v: number) => outLo + ((v - lo) / span) * (outHi - outLo);
}

function ticks(lo: number, hi: number): number[] {
  const out: number[] = [];
  const step = Math.max(1, Math.ceil((hi - lo) / 12));
  for (let v = Math.ceil(lo); v <= Math.floor(hi); v += step) {
    out.push(v);
  }
  return out;
}

/** Build the complete SVG document for a figure. */
export function renderSvg(spec: FigureSpec, curves: Curve[]): string {
  const xs = curves.flatMap((c) => c.points.map((p) => p.log2N));
  const ys = curves.flatMap((c) => c.points.map((p) => p.log2T));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  let yMin = Math.min(...ys);
  let yMax = Math.max(...ys);
  // guides are anchored at the data corner (xMin, yMin) and may extend high
  const guides = spec.guides ?? [];
  for (const g of guides) {
    yMax = Math.max(yMax, yMin + g.slope * (xMax - xMin));
    yMin = Math.min(yMin, yMin + g.slope * (xMax - xMin));
  }
  const pad = 0.05 * Math.max(yMax - yMin, 1);
  const sx = makeScale(xMin, xMax, MARGIN.left, WIDTH - MARGIN.right);
  const sy = makeScale(yMin - pad, yMax + pad, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  if (spec.title) {
    parts.push(
      `<text x="${px(WIDTH / 2)}" y="32" text-anchor="middle" font-size="20">` +
        `${escapeXml(spec.title)}</text>`,
    );
  }

  // axes
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`);
  for (const t of ticks(xMin, xMax)) {
    const x = sx(t);
    parts.push(`<line x1="${px(x)}" y1="${y0}" x2="${px(x)}" y2="${y0 + 6}" stroke="black"/>`);
    parts.push(
      `<text x="${px(x)}" y="${y0 + 22}" text-anchor="middle" font-size="13">${t}</text>`,
    );
  }
  for (const t of ticks(yMin - pad, yMax + pad)) {
    const y = sy(t);
    parts.push(`<line x1="${x0 - 6}" y1="${px(y)}" x2="${x0}" y2="${px(y)}" stroke="black"/>`);
    parts.push(
      `<text x="${x0 - 10}" y="${px(y + 4)}" text-anchor="end" font-size="13">${t}</text>`,
    );
  }
  parts.push(
    `<text x="${px((x0 + x1) / 2)}" y="${HEIGHT - 18}" text-anchor="middle" ` +
      `font-size="16">${escapeXml(spec.x_label ?? "log2 N")}</text>`,
  );
  parts.push(
    `<text x="24" y="${px((y0 + y1) / 2)}" text-anchor="middle" font-size="16" ` +
      `transform="rotate(-90 24 ${px((y0 + y1) / 2)})">` +
      `${escapeXml(spec.y_label ?? "log2 T")}</text>`,
  );

  // guide lines, dashed, anchored at the lower-left data corner
  for (const g of guides) {
    const gy0 = sy(Math.min(...ys));
    const gy1 = sy(Math.min(...ys) + g.slope * (xMax - xMin));
    parts.push(
      `<polyline class="guide" fill="none" stroke="#444444" stroke-width="1" ` +
        `stroke-dasharray="6 4" points="${px(sx(xMin))},${px(gy0)} ${px(sx(xMax))},${px(gy1)}"/>`,
    );
    const label = g.label ?? `slope ${g.slope}`;
    parts.push(
      `<text x="${px(sx(xMax) + 6)}" y="${px(gy1 + 4)}" font-size="12" ` +
        `fill="#444444">${escapeXml(label)}</text>`,
    );
  }

  // curves (sorted by label upstream), each with its legend entry
  curves.forEach((curve, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = curve.points
      .map((p) => `${px(sx(p.log2N))},${px(sy(p.log2T))}`)
      .join(" ");
    parts.push(
      `<polyline class="curve" fill="none" stroke="${color}" stroke-width="1.8" ` +
        `points="${pts}"/>`,
    );
    for (const p of curve.points) {
      parts.push(
        `<circle cx="${px(sx(p.log2N))}" cy="${px(sy(p.log2T))}" r="2.5" ` +
          `fill="${color}"/>`,
      );
    }
    const ly = MARGIN.top + 16 + i * 18;
    const lx = WIDTH - MARGIN.right + 30;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" ` +
        `stroke="${color}" stroke-width="1.8"/>`,
    );
    parts.push(
      `<text x="${lx + 28}" y="${ly}" font-size="12">${escapeXml(curve.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function buildFigure(specText: string): string {
  const spec = loadFigureSpec(specText);
  const curves = loadCurves(spec);
  return renderSvg(spec, curves);
}
