/** DOM wiring: one session, one in-flight request, server-computed topology. */

import {
  ApiClient,
  ApiError,
  CatalogEntry,
  Evaluation,
  PatchworkFile,
  TriangulationObject,
} from "./api.js";
import { toggleBit } from "./grid.js";
import { renderBoard } from "./renderer.js";
import { SessionState } from "./state.js";

interface Elements {
  board: HTMLElement;
  status: HTMLElement;
  schemeBox: HTMLElement;
  targetBanner: HTMLElement;
  catalogSelect: HTMLSelectElement;
  targetInput: HTMLInputElement;
  undoBtn: HTMLButtonElement;
  redoBtn: HTMLButtonElement;
  saveBtn: HTMLButtonElement;
  loadInput: HTMLInputElement;
}

export class ExplorerApp {
  private state: SessionState;
  private catalogEntries: CatalogEntry[] = [];
  private triangulationObj: TriangulationObject | null = null;
  private busy = false;

  constructor(
    private el: Elements,
    private api: ApiClient,
  ) {
    this.state = new SessionState({
      degree: 7,
      triangulation: "honeycomb7",
      signs: "1".repeat(36),
    });
  }

  async start(): Promise<void> {
    this.catalogEntries = await this.api.catalog();
    this.el.catalogSelect.innerHTML = this.catalogEntries
      .map((e) => `<option value="${e.key}">${e.key} (degree ${e.degree})</option>`)
      .join("");
    this.el.catalogSelect.value = "honeycomb7";
    this.bindEvents();
    await this.selectCatalog("honeycomb7");
  }

  private bindEvents(): void {
    this.el.catalogSelect.addEventListener("change", () => {
      void this.selectCatalog(this.el.catalogSelect.value);
    });
    this.el.board.addEventListener("click", (ev) => {
      const target = ev.target as Element;
      const point = target.getAttribute("data-point");
      const edge = target.getAttribute("data-edge");
      if (point) {
        const [x, y] = point.split(",").map(Number);
        if (x >= 0 && y >= 0) void this.toggle(x, y);
      } else if (edge && target.classList.contains("interior")) {
        const [a, b] = edge.split("|").map((s) => s.split(",").map(Number));
        void this.flip([
          [Math.abs(a[0]), Math.abs(a[1])],
          [Math.abs(b[0]), Math.abs(b[1])],
        ]);
      }
    });
    this.el.undoBtn.addEventListener("click", () => {
      if (this.state.undo()) this.render("undid move");
    });
    this.el.redoBtn.addEventListener("click", () => {
      if (this.state.redo()) this.render("redid move");
    });
    this.el.targetInput.addEventListener("input", () => {
      this.state.setTarget(this.el.targetInput.value);
      this.renderTarget();
    });
    this.el.saveBtn.addEventListener("click", () => this.saveFile());
    this.el.loadInput.addEventListener("change", () => {
      void this.loadFile();
    });
  }

  private async selectCatalog(key: string): Promise<void> {
    const entry = this.catalogEntries.find((e) => e.key === key);
    if (!entry) return;
    this.triangulationObj = entry.triangulation;
    const nPoints = ((entry.degree + 1) * (entry.degree + 2)) / 2;
    this.state.reset({
      degree: entry.degree,
      triangulation: key,
      signs: "1".repeat(nPoints),
    });
    await this.refreshEvaluation();
  }

  private async refreshEvaluation(): Promise<void> {
    const seq = this.state.nextSeq();
    await this.guarded(async () => {
      const ev = await this.api.evaluate(this.state.patchwork);
      if (this.state.applyEvaluation(seq, ev)) {
        this.render("evaluated");
      }
    });
  }

  private async toggle(x: number, y: number): Promise<void> {
    await this.guarded(async () => {
      const res = await this.api.toggle(this.state.patchwork, [x, y]);
      this.state.commit(res.patchwork, res.evaluation);
      this.render(`toggled (${x}, ${y})`);
    });
  }

  private async flip(edge: number[][]): Promise<void> {
    await this.guarded(async () => {
      const before = this.state.evaluation;
      const res = await this.api.flip(this.state.patchwork, edge);
      this.state.commit(res.patchwork, res.evaluation);
      this.triangulationObj = res.patchwork.triangulation as TriangulationObject;
      const badges: string[] = [];
      if (res.is_bridge_flip) badges.push("bridge flip");
      if (!res.root_isotopic) badges.push("root isotopy changed");
      if (before && before.scheme !== res.evaluation.scheme) {
        badges.push(`scheme ${before.scheme} → ${res.evaluation.scheme}`);
      }
      this.render(badges.length ? badges.join(" · ") : "flipped");
    });
  }

  private async guarded(fn: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    try {
      await fn();
    } catch (err) {
      if (err instanceof ApiError) {
        this.setStatus(`service error: ${err.detail}`);
      } else {
        this.setStatus(`service unreachable: ${String(err)}`);
      }
    } finally {
      this.busy = false;
    }
  }

  private triangulation(): TriangulationObject {
    if (typeof this.state.patchwork.triangulation !== "string") {
      return this.state.patchwork.triangulation;
    }
    if (!this.triangulationObj) throw new Error("catalog not loaded");
    return this.triangulationObj;
  }

  render(message: string): void {
    const pw = this.state.patchwork;
    this.el.board.innerHTML = renderBoard(
      pw.degree,
      this.triangulation(),
      pw.signs,
      this.state.evaluation,
    );
    const ev = this.state.evaluation;
    this.el.schemeBox.textContent = ev
      ? `${ev.scheme}   loops=${ev.loops} p=${ev.p} n=${ev.n}`
      : "(not evaluated)";
    this.el.undoBtn.disabled = !this.state.canUndo();
    this.el.redoBtn.disabled = !this.state.canRedo();
    this.setStatus(message);
    this.renderTarget();
  }

  private renderTarget(): void {
    const st = this.state.targetStatus();
    const el = this.el.targetBanner;
    switch (st.kind) {
      case "hidden":
        el.textContent = "";
        el.className = "target";
        break;
      case "invalid":
        el.textContent = `target unreadable: ${st.message}`;
        el.className = "target invalid";
        break;
      case "matched":
        el.textContent = `matched ${st.target}`;
        el.className = "target matched";
        break;
      case "searching":
        el.textContent = `hunting ${st.target}  (Δp=${st.dp}, Δn=${st.dn})`;
        el.className = "target searching";
        break;
    }
  }

  private setStatus(message: string): void {
    this.el.status.textContent = message;
  }

  private saveFile(): void {
    const blob = new Blob([this.state.save()], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "patchwork.json";
    a.click();
    URL.revokeObjectURL(a.href);
  }

  private async loadFile(): Promise<void> {
    const file = this.el.loadInput.files?.[0];
    if (!file) return;
    const text = await file.text();
    try {
      const next = SessionState.load(text);
      this.state = next;
      if (typeof next.patchwork.triangulation !== "string") {
        this.triangulationObj = next.patchwork.triangulation;
      } else {
        const entry = this.catalogEntries.find(
          (e) => e.key === next.patchwork.triangulation,
        );
        this.triangulationObj = entry ? entry.triangulation : null;
      }
      await this.refreshEvaluation();
    } catch (err) {
      this.setStatus(`could not load file: ${String(err)}`);
    }
    this.el.loadInput.value = "";
  }

  /** Bit-exact toggle preview used by tests; the server stays authoritative
   * for the evaluation. */
  previewToggle(x: number, y: number): PatchworkFile {
    const pw = this.state.patchwork;
    return { ...pw, signs: toggleBit(pw.signs, pw.degree, x, y) };
  }

  get session(): SessionState {
    return this.state;
  }

  get lastEvaluation(): Evaluation | null {
    return this.state.evaluation;
  }
}
