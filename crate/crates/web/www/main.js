import init, { explore, crossover, size_curve } from "./pkg/fsadet_web.js";

const COLORS = { "per-graph": "#d62728", "per-state": "#2ca02c", "per-subset": "#1f77b4" };

const num = (id) => Number(document.getElementById(id).value);
const list = (id) =>
  new Float64Array(document.getElementById(id).value.split(",").map((s) => Number(s.trim())).filter((x) => !Number.isNaN(x)));
const seed = (id) => BigInt(Math.max(0, Math.floor(num(id))));

function showError(el, err) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err);
  el.appendChild(p);
}

// Defers work one frame so the "running" message paints first.
function later(fn) {
  return new Promise((resolve) => requestAnimationFrame(() => setTimeout(() => resolve(fn()), 0)));
}

function runExplore() {
  const out = document.getElementById("ex-out");
  try {
    const r = JSON.parse(explore(num("ex-states"), num("ex-symbols"), num("ex-td"), num("ex-jd"), seed("ex-seed")));
    const m = r.metrics;
    const rows = r.runs
      .map(
        (x) =>
          `<tr><td style="color:${COLORS[x.strategy]}">${x.strategy}</td><td>${x.ms.toFixed(3)}</td>` +
          `<td>${x.out_states}</td><td>${x.out_transitions}</td><td>${x.stats.closure_calls}</td>` +
          `<td>${x.stats.memo_hits}</td><td>${x.stats.agenda_peak}</td></tr>`,
      )
      .join("");
    out.innerHTML =
      `<table><tr><th>input</th><th>count</th><th>abs. density</th><th>det. density</th></tr>` +
      `<tr><td>transitions</td><td>${m.num_transitions}</td><td>${m.abs_transition_density.toFixed(4)}</td><td>${m.det_transition_density.toFixed(3)}</td></tr>` +
      `<tr><td>jumps</td><td>${m.num_eps_moves}</td><td>${m.abs_jump_density.toFixed(4)}</td><td>${m.det_jump_density.toFixed(3)}</td></tr></table>` +
      (r.repair_edges ? `<p>${r.repair_edges} transitions added for reachability.</p>` : "") +
      `<table><tr><th>strategy</th><th>ms</th><th>DFA states</th><th>DFA transitions</th><th>closure calls</th><th>memo hits</th><th>agenda peak</th></tr>${rows}</table>` +
      `<div class="cols"><div><b>input</b><pre></pre></div><div><b>output</b><pre></pre></div></div>` +
      (r.truncated ? "<p>Texts truncated.</p>" : "");
    const pres = out.querySelectorAll("pre");
    pres[0].textContent = r.nfa_text;
    pres[1].textContent = r.dfa_text;
  } catch (err) {
    showError(out, err);
  }
}

// Line chart of named series [{name, color, points: [[x, y], ...]}].
function plot(canvas, series, { xLabel, yLabel, logY }) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, L = 70, R = 130, T = 15, B = 45;
  ctx.clearRect(0, 0, W, H);
  const pts = series.flatMap((s) => s.points);
  if (!pts.length) return;
  const fy = logY ? (y) => Math.log10(Math.max(y, 1e-6)) : (y) => y;
  const xs = pts.map((p) => p[0]), ys = pts.map((p) => fy(p[1]));
  let [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) { x0 -= 1; x1 += 1; }
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  if (!logY) y0 = Math.min(0, y0);
  const sx = (x) => L + ((x - x0) / (x1 - x0)) * (W - L - R);
  const sy = (y) => H - B - ((fy(y) - y0) / (y1 - y0)) * (H - T - B);

  ctx.strokeStyle = "#888";
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.beginPath();
  ctx.moveTo(L, T);
  ctx.lineTo(L, H - B);
  ctx.lineTo(W - R, H - B);
  ctx.stroke();
  ctx.textAlign = "center";
  for (const x of [...new Set(xs)].sort((a, b) => a - b)) ctx.fillText(String(x), sx(x), H - B + 16);
  ctx.fillText(xLabel, (L + W - R) / 2, H - 8);
  ctx.textAlign = "right";
  for (let i = 0; i <= 4; i++) {
    const v = y0 + ((y1 - y0) * i) / 4;
    const label = logY ? (10 ** v).toPrecision(2) : v.toFixed(0);
    ctx.fillText(label, L - 6, H - B - ((H - T - B) * i) / 4 + 4);
  }
  ctx.save();
  ctx.translate(14, (T + H - B) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.textAlign = "center";
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();

  series.forEach((s, i) => {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    ctx.beginPath();
    s.points.forEach(([x, y], j) => (j ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    ctx.stroke();
    for (const [x, y] of s.points) ctx.fillRect(sx(x) - 2, sy(y) - 2, 5, 5);
    ctx.textAlign = "left";
    ctx.fillText(s.name, W - R + 12, T + 14 + 18 * i);
  });
}

async function runCrossover() {
  const msg = document.getElementById("cx-msg");
  msg.textContent = "running…";
  try {
    const rows = await later(() =>
      JSON.parse(crossover(num("cx-states"), num("cx-symbols"), list("cx-td"), list("cx-jd"), num("cx-trials"), seed("cx-seed"))),
    );
    const series = Object.keys(COLORS).map((name) => ({
      name,
      color: COLORS[name],
      points: rows.filter((r) => r.strategy === name).map((r) => [r.det_jdensity, r.median_ms]),
    }));
    plot(document.getElementById("cx-plot"), series, {
      xLabel: "deterministic jump density (ε-moves per state)",
      yLabel: "median ms (log)",
      logY: true,
    });
    msg.textContent = `${rows.length ? rows[0].count : 0} automata per point`;
  } catch (err) {
    showError(msg, err);
  }
}

async function runBlowup() {
  const msg = document.getElementById("bu-msg");
  msg.textContent = "running…";
  try {
    const pts = await later(() =>
      JSON.parse(size_curve(num("bu-states"), num("bu-symbols"), list("bu-td"), num("bu-trials"), seed("bu-seed"))),
    );
    plot(
      document.getElementById("bu-plot"),
      [{ name: "DFA states", color: "#9467bd", points: pts.map((p) => [p.det_tdensity, p.median_states]) }],
      { xLabel: "deterministic transition density", yLabel: "median DFA states", logY: false },
    );
    msg.textContent = "";
  } catch (err) {
    showError(msg, err);
  }
}

await init();
document.getElementById("ex-run").addEventListener("click", runExplore);
document.getElementById("cx-run").addEventListener("click", runCrossover);
document.getElementById("bu-run").addEventListener("click", runBlowup);
runExplore();
