// Expects `wasm-pack build --target web --out-dir www/pkg` to have run.
import init, { star_product, surface_summary, patch_check } from "./pkg/dq_web.js";

const $ = (id) => document.getElementById(id);

function show(target, raw, render) {
  const reply = JSON.parse(raw);
  const out = $(target);
  out.classList.toggle("error", "error" in reply);
  out.textContent = "error" in reply ? reply.error : render(reply.ok);
}

await init();

$("star-run").addEventListener("click", () => {
  const raw = star_product(Number($("star-n").value), Number($("star-order").value), $("star-f").value, $("star-g").value);
  show("star-out", raw, (ok) => ok.product);
});

$("surface-run").addEventListener("click", () => {
  show("surface-out", surface_summary($("surface").value), (ok) =>
    `${ok.summary}\n${ok.charts} charts, ${ok.overlaps} overlaps, ${ok.triple_overlaps} triple overlaps`);
});

$("patch-run").addEventListener("click", () => {
  show("surface-out", patch_check($("surface").value, 1n, 20, 6), (ok) => ok.report);
});
