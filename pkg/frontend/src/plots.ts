/** Canvas rendering of the two curve projections: a*-b* and L*-chroma. */

export interface PlotStyle {
  line: string;
  marker: string;
  grid: string;
}

const DEFAULT_STYLE: PlotStyle = { line: "#444", marker: "#111", grid: "#ddd" };

function fitTransform(
  points: [number, number][],
  width: number,
  height: number,
  pad: number,
): (p: [number, number]) => [number, number] {
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => p[1]);
  const xMin = Math.min(...xs, -1);
  const xMax = Math.max(...xs, 1);
  const yMin = Math.min(...ys, -1);
  const yMax = Math.max(...ys, 1);
  const scale = Math.min(
    (width - 2 * pad) / Math.max(xMax - xMin, 1e-6),
    (height - 2 * pad) / Math.max(yMax - yMin, 1e-6),
  );
  return ([x, y]) => [
    pad + (x - xMin) * scale,
    height - pad - (y - yMin) * scale,
  ];
}

export function drawProjection(
  canvas: HTMLCanvasElement,
  points: [number, number][],
  swatches: string[],
  style: PlotStyle = DEFAULT_STYLE,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx || points.length === 0) {
    return;
  }
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const toPx = fitTransform(points, width, height, 14);

  ctx.strokeStyle = style.grid;
  ctx.lineWidth = 1;
  const [ox, oy] = toPx([0, 0]);
  ctx.beginPath();
  ctx.moveTo(0, oy);
  ctx.lineTo(width, oy);
  ctx.moveTo(ox, 0);
  ctx.lineTo(ox, height);
  ctx.stroke();

  ctx.strokeStyle = style.line;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  points.forEach((p, i) => {
    const [x, y] = toPx(p);
    if (i === 0) {
      ctx.moveTo(x, y);
    } else {
      ctx.lineTo(x, y);
    }
  });
  ctx.stroke();

  points.forEach((p, i) => {
    const [x, y] = toPx(p);
    ctx.fillStyle = swatches[i] ?? style.marker;
    ctx.strokeStyle = style.marker;
    ctx.beginPath();
    ctx.arc(x, y, i === 0 ? 5 : 3.5, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
  });
}
