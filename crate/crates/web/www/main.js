import init, { jStats, maximizeDemo, growthTable } from "./pkg/flagext_web.js";

const COLORS = ["#999", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

const num = (id) => Number(document.getElementById(id).value);
const call = (f, ...args) => JSON.parse(f(...args));

// Vertices on a circle, grouped by part so cross edges fan out between arcs.
function draw(canvas, edges, parts) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, rad = Math.min(w, h) / 2 - 16;
  ctx.clearRect(0, 0, w, h);
  const order = parts.flat();
  const color = new Map();
  parts.forEach((p, i) => p.forEach((v) => color.set(v, COLORS[i % COLORS.length])));
  const pos = new Map();
  order.forEach((v, i) => {
    const a = (2 * Math.PI * i) / order.length - Math.PI / 2;
    pos.set(v, [w / 2 + rad * Math.cos(a), h / 2 + rad * Math.sin(a)]);
  });
  const part = new Map();
  parts.forEach((p, i) => p.forEach((v) => part.set(v, i)));
  for (const [u, v] of edges) {
    const inside = part.get(u) === part.get(v);
    ctx.strokeStyle = inside ? color.get(u) : "rgba(0,0,0,0.08)";
    ctx.lineWidth = inside ? 2 : 1;
    ctx.beginPath();
    ctx.moveTo(...pos.get(u));
    ctx.lineTo(...pos.get(v));
    ctx.stroke();
  }
  for (const v of order) {
    ctx.fillStyle = color.get(v);
    ctx.beginPath();
    ctx.arc(...pos.get(v), 5, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function show(id, value) {
  document.getElementById(id).textContent =
    typeof value === "string" ? value : JSON.stringify(value, null, 1);
}

function runStats() {
  const v = call(jStats, num("j-n"), num("j-r"));
  if (v.error) return show("j-out", v.error);
  draw(document.getElementById("j-canvas"), v.edges, [[], ...v.parts]);
  show("j-out", {
    clique_vector: v.clique_vector,
    face_vectors: v.face_vectors,
    manifold: v.manifold ?? "skipped (n too large)",
  });
}

function runMaximize() {
  const v = call(maximizeDemo, num("m-n"), num("m-r"), num("m-k"));
  if (v.error) return show("m-out", v.error);
  draw(document.getElementById("m-before"), v.start.edges, v.start.parts);
  draw(document.getElementById("m-after"), v.result.edges, v.result.parts);
  const lines = v.moves.moves.map(
    (m, i) => `${i + 1}. ${m.kind} on [${m.vertices}] gain ${m.gain}` +
      (m.predicted_gain != null ? ` (predicted ${m.predicted_gain})` : ""),
  );
  lines.push(`final value ${v.value}, radical: ${v.radical}`);
  show("m-out", lines.join("\n"));
}

function runGrowth() {
  const v = call(growthTable, num("g-r"), num("g-lo"), num("g-hi"));
  const out = document.getElementById("g-out");
  if (v.error) return (out.textContent = v.error);
  const rows = v.rows
    .map((row) => `<tr><td>${row.n}</td><td>${row.count}</td><td>${row.ratio}</td></tr>`)
    .join("");
  out.innerHTML = `<table><tr><th>n</th><th>top faces</th><th>ratio to n^r</th></tr>${rows}</table>` +
    `<p>max ratio ${v.max_ratio}</p>`;
}

await init();
document.getElementById("j-go").onclick = runStats;
document.getElementById("m-go").onclick = runMaximize;
document.getElementById("g-go").onclick = runGrowth;
runStats();
