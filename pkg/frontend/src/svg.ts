/**
 * Minimal SVG scene builder: enough axes, polylines, markers and text for
 * the report figures. Coordinates are mapped through linear or log2 scales
 * onto a fixed plot frame.
 */

export interface Scale {
  toPixel(value: number): number;
  ticks(): { value: number; label: string }[];
}

const FONT = "11px sans-serif";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export function linearScale(
  lo: number,
  hi: number,
  pixelLo: number,
  pixelHi: number,
  tickCount = 6,
): Scale {
  const span = hi - lo || 1;
  const step = niceStep(span / tickCount);
  const first = Math.ceil(lo / step) * step;
  const ticks: { value: number; label: string }[] = [];
  for (let v = first; v <= hi + 1e-12; v += step) {
    ticks.push({ value: v, label: formatNumber(v) });
  }
  return {
    toPixel: (v) => pixelLo + ((v - lo) / span) * (pixelHi - pixelLo),
    ticks: () => ticks,
  };
}

/** Scale over log2-transformed values; tick labels render as 2^k. */
export function log2Scale(
  lo: number,
  hi: number,
  pixelLo: number,
  pixelHi: number,
  maxTicks = 12,
): Scale {
  const span = hi - lo || 1;
  const step = Math.max(1, Math.ceil(span / maxTicks));
  const first = Math.ceil(lo);
  const ticks: { value: number; label: string }[] = [];
  for (let k = first; k <= hi + 1e-9; k += step) {
    ticks.push({ value: k, label: `2^${k}` });
  }
  return {
    toPixel: (v) => pixelLo + ((v - lo) / span) * (pixelHi - pixelLo),
    ticks: () => ticks,
  };
}

function niceStep(raw: number): number {
  const power = Math.pow(10, Math.floor(Math.log10(Math.abs(raw) || 1)));
  const unit = raw / power;
  const nice = unit >= 5 ? 10 : unit >= 2 ? 5 : unit >= 1 ? 2 : 1;
  return nice * power;
}

export function formatNumber(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) return v.toExponential(1);
  return String(Math.round(v * 1e6) / 1e6);
}

export interface SeriesStyle {
  color: string;
  dash?: string;
  width?: number;
  marker?: "circle" | "square" | "diamond" | "none";
}

export class Chart {
  readonly width: number;
  readonly height: number;
  readonly margin = { top: 34, right: 16, bottom: 42, left: 64 };
  private readonly parts: string[] = [];

  constructor(width = 560, height = 400) {
    this.width = width;
    this.height = height;
  }

  get plotLeft(): number {
    return this.margin.left;
  }

  get plotRight(): number {
    return this.width - this.margin.right;
  }

  get plotTop(): number {
    return this.margin.top;
  }

  get plotBottom(): number {
    return this.height - this.margin.bottom;
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  title(text: string): void {
    this.parts.push(
      `<text x="${this.width / 2}" y="18" text-anchor="middle" ` +
        `style="font:13px sans-serif;font-weight:bold">${esc(text)}</text>`,
    );
  }

  axes(x: Scale, y: Scale, xLabel: string, yLabel: string): void {
    const { plotLeft: l, plotRight: r, plotTop: t, plotBottom: b } = this;
    this.parts.push(
      `<rect x="${l}" y="${t}" width="${r - l}" height="${b - t}" ` +
        `fill="none" stroke="#333"/>`,
    );
    for (const tick of x.ticks()) {
      const px = x.toPixel(tick.value);
      this.parts.push(
        `<line x1="${px.toFixed(2)}" y1="${b}" x2="${px.toFixed(2)}" y2="${b + 4}" stroke="#333"/>`,
        `<line x1="${px.toFixed(2)}" y1="${t}" x2="${px.toFixed(2)}" y2="${b}" stroke="#ddd" stroke-width="0.5"/>`,
        `<text x="${px.toFixed(2)}" y="${b + 16}" text-anchor="middle" style="font:${FONT}">${esc(tick.label)}</text>`,
      );
    }
    for (const tick of y.ticks()) {
      const py = y.toPixel(tick.value);
      this.parts.push(
        `<line x1="${l - 4}" y1="${py.toFixed(2)}" x2="${l}" y2="${py.toFixed(2)}" stroke="#333"/>`,
        `<line x1="${l}" y1="${py.toFixed(2)}" x2="${r}" y2="${py.toFixed(2)}" stroke="#ddd" stroke-width="0.5"/>`,
        `<text x="${l - 7}" y="${(py + 3).toFixed(2)}" text-anchor="end" style="font:${FONT}">${esc(tick.label)}</text>`,
      );
    }
    this.parts.push(
      `<text x="${(l + r) / 2}" y="${this.height - 8}" text-anchor="middle" style="font:${FONT}">${esc(xLabel)}</text>`,
      `<text x="14" y="${(t + b) / 2}" text-anchor="middle" ` +
        `transform="rotate(-90 14 ${(t + b) / 2})" style="font:${FONT}">${esc(yLabel)}</text>`,
    );
  }

  series(
    points: [number, number][],
    x: Scale,
    y: Scale,
    style: SeriesStyle,
    cssClass = "series",
  ): void {
    const path = points
      .map(([px, py]) => `${x.toPixel(px).toFixed(2)},${y.toPixel(py).toFixed(2)}`)
      .join(" ");
    const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
    this.parts.push(
      `<polyline class="${cssClass}" points="${path}" fill="none" ` +
        `stroke="${style.color}" stroke-width="${style.width ?? 1.5}"${dash}/>`,
    );
    if (style.marker && style.marker !== "none") {
      for (const [px, py] of points) {
        this.marker(x.toPixel(px), y.toPixel(py), style);
      }
    }
  }

  private marker(cx: number, cy: number, style: SeriesStyle): void {
    const c = style.color;
    if (style.marker === "circle") {
      this.parts.push(
        `<circle cx="${cx.toFixed(2)}" cy="${cy.toFixed(2)}" r="3" fill="${c}"/>`,
      );
    } else if (style.marker === "square") {
      this.parts.push(
        `<rect x="${(cx - 3).toFixed(2)}" y="${(cy - 3).toFixed(2)}" width="6" height="6" fill="${c}"/>`,
      );
    } else if (style.marker === "diamond") {
      this.parts.push(
        `<path d="M ${cx.toFixed(2)} ${(cy - 4).toFixed(2)} L ${(cx + 4).toFixed(2)} ${cy.toFixed(2)} ` +
          `L ${cx.toFixed(2)} ${(cy + 4).toFixed(2)} L ${(cx - 4).toFixed(2)} ${cy.toFixed(2)} Z" fill="${c}"/>`,
      );
    }
  }

  legend(entries: { label: string; style: SeriesStyle }[]): void {
    let ly = this.plotTop + 8;
    for (const { label, style } of entries) {
      const lx = this.plotRight - 150;
      const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
      this.parts.push(
        `<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" ` +
          `stroke="${style.color}" stroke-width="${style.width ?? 1.5}"${dash}/>`,
        `<text x="${lx + 32}" y="${ly + 3}" style="font:${FONT}">${esc(label)}</text>`,
      );
      ly += 16;
    }
  }

  text(px: number, py: number, content: string, color = "#333"): void {
    this.parts.push(
      `<text x="${px.toFixed(2)}" y="${py.toFixed(2)}" fill="${color}" ` +
        `style="font:${FONT}">${esc(content)}</text>`,
    );
  }

  render(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" ` +
      `height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">\n` +
      `<rect width="${this.width}" height="${this.height}" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}
