// Expects the output of `wasm-pack build crates/wasm --target web --out-dir www/pkg`.
import init, { bounds_curve, transforms, evaluate } from "./pkg/fopt_wasm.js";

function plot(canvas, xs, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const all = series.flatMap((s) => s.ys);
  const ymin = opts.ymin ?? Math.min(...all);
  const ymax = opts.ymax ?? Math.max(...all);
  const xmin = xs[0], xmax = xs[xs.length - 1];
  const sx = (x) => pad + ((x - xmin) / (xmax - xmin)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - ymin) / (ymax - ymin || 1)) * (h - 2 * pad);

  ctx.strokeStyle = "#444";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad / 2, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  for (let i = 0; i <= 4; i++) {
    const y = ymin + ((ymax - ymin) * i) / 4;
    ctx.fillText(y.toFixed(2), 2, sy(y) + 4);
    const x = xmin + ((xmax - xmin) * i) / 4;
    ctx.fillText(x.toFixed(2), sx(x) - 10, h - pad + 14);
  }
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    s.ys.forEach((y, i) => (i ? ctx.lineTo(sx(xs[i]), sy(y)) : ctx.moveTo(sx(xs[i]), sy(y))));
    ctx.stroke();
  }
}

function drawBounds() {
  const max = Math.max(1, Number(document.getElementById("ell-max").value) || 10);
  const r = JSON.parse(bounds_curve(0, max, 801));
  if (r.error) return;
  plot(document.getElementById("bounds"), r.ell, [
    { ys: r.ell, color: "#999" },
    { ys: r.upper, color: "#1f6fb4" },
    { ys: r.lower, color: "#2a9d4a" },
  ], { ymin: 0 });
}

function drawTransforms() {
  const status = document.getElementById("status");
  const r = JSON.parse(transforms(document.getElementById("poly").value, -1.2, 1.2, 961));
  if (r.error) {
    status.textContent = r.error;
    return;
  }
  status.textContent = "";
  plot(document.getElementById("transforms"), r.x, [
    { ys: r.hhat, color: "#c0392b" },
    { ys: r.ghat, color: "#7d3c98" },
  ]);
}

function runEval() {
  const out = document.getElementById("eval-out");
  out.textContent = "computing…";
  // let the browser paint before the (possibly slow) exact computation
  setTimeout(() => {
    const r = JSON.parse(evaluate(document.getElementById("problem").value, document.getElementById("eval-poly").value));
    out.textContent = JSON.stringify(r, null, 2);
  }, 10);
}

await init();
document.getElementById("status").textContent = "";
document.getElementById("ell-max").addEventListener("input", drawBounds);
document.getElementById("poly").addEventListener("change", drawTransforms);
document.getElementById("eval-go").addEventListener("click", runEval);
drawBounds();
drawTransforms();
