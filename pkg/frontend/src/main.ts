import { ApiClient } from "./api.js";
import { ExplorerApp } from "./app.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "http://127.0.0.1:8321";

const app = new ExplorerApp(
  {
    board: el("board"),
    status: el("status"),
    schemeBox: el("scheme"),
    targetBanner: el("target-banner"),
    catalogSelect: el("catalog"),
    targetInput: el("target"),
    undoBtn: el("undo"),
    redoBtn: el("redo"),
    saveBtn: el("save"),
    loadInput: el("load"),
  },
  new ApiClient(apiBase),
);

app.start().catch((err) => {
  el("status").textContent = `failed to reach the service at ${apiBase}: ${err}`;
});
