import init, { alpha_sweep, limit_curve, ground_state_heatmap, ground_state_residual } from "./pkg/specfact_web.js";

const BRANCH_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];
const BRANCH_NAMES = ["even", "odd", "interior", "edge-cos", "edge-coupled"];
const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function axes(ctx, w, h, pad, xr, yr, xlabel, ylabel) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#444";
  ctx.strokeRect(pad, pad / 2, w - 1.5 * pad, h - 1.5 * pad);
  ctx.fillStyle = "#222";
  ctx.font = "12px sans-serif";
  ctx.fillText(`${xlabel}: ${xr[0].toPrecision(3)} .. ${xr[1].toPrecision(3)}`, pad, h - 6);
  ctx.fillText(`${ylabel}: ${yr[0].toPrecision(3)} .. ${yr[1].toPrecision(3)}`, w - 260, h - 6);
  const sx = (x) => pad + ((x - xr[0]) / (xr[1] - xr[0] || 1)) * (w - 1.5 * pad);
  const sy = (y) => h - pad - ((y - yr[0]) / (yr[1] - yr[0] || 1)) * (h - 1.5 * pad);
  return [sx, sy];
}

function drawSweep() {
  const from = num("a-from"), to = num("a-to"), kmax = num("a-kmax");
  const fact = $("a-fact").checked;
  const canvas = $("a-plot"), ctx = canvas.getContext("2d");
  try {
    const v = alpha_sweep(from, to, 240, kmax, fact);
    let ymin = 0, ymax = kmax * kmax;
    for (let i = 1; i < v.length; i += 3) ymin = Math.min(ymin, v[i]);
    const [sx, sy] = axes(ctx, canvas.width, canvas.height, 40, [from, to], [ymin, ymax], "alpha", "eigenvalue");
    for (let i = 0; i < v.length; i += 3) {
      ctx.fillStyle = BRANCH_COLORS[v[i + 2]];
      ctx.fillRect(sx(v[i]) - 1, sy(v[i + 1]) - 1, 2, 2);
    }
    $("a-info").textContent = BRANCH_NAMES.map((n, i) => `${n}: ${BRANCH_COLORS[i]}`).join("   ");
  } catch (e) {
    $("a-info").textContent = String(e);
  }
}

function drawLimit() {
  const kind = $("l-kind").value, levels = Math.max(1, Math.min(8, num("l-levels") | 0));
  const params = kind === "delta"
    ? [1, 3, 10, 30, 100, 300, 1000, 3000, 10000]
    : [0.8, 0.6, 0.4, 0.3, 0.2, 0.15, 0.1, 0.07];
  const grid = kind === "delta" ? 1500 : 3000;
  const canvas = $("l-plot"), ctx = canvas.getContext("2d");
  try {
    const v = limit_curve(kind, Float64Array.from(params), levels, grid);
    const xs = params.map((p) => (kind === "delta" ? Math.log10(p) : p));
    let ymin = Infinity, ymax = -Infinity;
    for (const y of v) if (Number.isFinite(y)) { ymin = Math.min(ymin, y); ymax = Math.max(ymax, y); }
    const xr = [Math.min(...xs), Math.max(...xs)];
    const [sx, sy] = axes(ctx, canvas.width, canvas.height, 40, xr, [ymin, ymax],
      kind === "delta" ? "log10 g" : "eps", "eigenvalue");
    for (let l = 0; l < levels; l++) {
      ctx.strokeStyle = BRANCH_COLORS[l % BRANCH_COLORS.length];
      ctx.beginPath();
      xs.forEach((x, i) => {
        const y = v[i * levels + l];
        if (i === 0) ctx.moveTo(sx(x), sy(y)); else ctx.lineTo(sx(x), sy(y));
      });
      ctx.stroke();
    }
    const last = params.length - 1;
    $("l-info").textContent = `last point: ${Array.from(v.slice(last * levels, last * levels + levels)).map((y) => y.toFixed(6)).join(", ")}`;
  } catch (e) {
    $("l-info").textContent = String(e);
  }
}

function drawHeatmap() {
  const model = $("h-model").value, param = num("h-param"), lambda = num("h-lambda");
  const canvas = $("h-plot"), ctx = canvas.getContext("2d");
  const res = 140;
  try {
    const v = ground_state_heatmap(model, param, lambda, res);
    const img = ctx.createImageData(res, res);
    for (let j = 0; j < res; j++) {
      for (let i = 0; i < res; i++) {
        const t = Math.sqrt(v[j * res + i]);
        const p = 4 * ((res - 1 - j) * res + i);
        img.data[p] = 255 * t;
        img.data[p + 1] = 80 * t;
        img.data[p + 2] = 255 * (1 - t);
        img.data[p + 3] = 255;
      }
    }
    const tmp = document.createElement("canvas");
    tmp.width = res; tmp.height = res;
    tmp.getContext("2d").putImageData(img, 0, 0);
    ctx.imageSmoothingEnabled = false;
    ctx.drawImage(tmp, 0, 0, canvas.width, canvas.height);
    const [dev, e0] = ground_state_residual(model, param, lambda, 200, 0);
    const a = v[res * res], b = v[res * res + 1];
    $("h-info").textContent =
      `box (${a.toFixed(2)}, ${b.toFixed(2)})^2   E0 = ${e0.toPrecision(10)}   max |H Psi0/Psi0 - E0| = ${dev.toExponential(2)}`;
  } catch (e) {
    $("h-info").textContent = String(e);
  }
}

await init();
$("a-run").onclick = drawSweep;
$("l-run").onclick = drawLimit;
$("h-run").onclick = drawHeatmap;
drawSweep();
drawLimit();
drawHeatmap();
