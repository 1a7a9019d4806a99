/** Session state: the current (triangulation, signs) pair, its latest
 * evaluation, a capped undo/redo stack, in-flight-request sequencing, and
 * the optional target scheme. */

import {
  Evaluation,
  PatchworkFile,
  parsePatchwork,
  serializePatchwork,
} from "./api.js";
import { normalizeSchemeText, schemeStats } from "./scheme.js";

export interface Snapshot {
  patchwork: PatchworkFile;
  evaluation: Evaluation | null;
}

export type TargetStatus =
  | { kind: "hidden" }
  | { kind: "invalid"; message: string }
  | { kind: "matched"; target: string }
  | { kind: "searching"; target: string; dp: number; dn: number };

const UNDO_CAP = 256;

function clonePatchwork(pw: PatchworkFile): PatchworkFile {
  return JSON.parse(JSON.stringify(pw)) as PatchworkFile;
}

export class SessionState {
  private undoStack: Snapshot[] = [];
  private redoStack: Snapshot[] = [];
  private seq = 0;
  private appliedSeq = 0;
  private targetText: string | null = null;

  patchwork: PatchworkFile;
  evaluation: Evaluation | null = null;

  constructor(patchwork: PatchworkFile) {
    this.patchwork = clonePatchwork(patchwork);
  }

  /** Sequence number for the next evaluation request. */
  nextSeq(): number {
    return ++this.seq;
  }

  /** Apply a server response unless a newer request has been answered. */
  applyEvaluation(seq: number, evaluation: Evaluation): boolean {
    if (seq < this.appliedSeq) {
      return false;
    }
    this.appliedSeq = seq;
    this.evaluation = evaluation;
    return true;
  }

  /** Commit a new patchwork (after a toggle or flip), pushing the previous
   * state for undo. */
  commit(patchwork: PatchworkFile, evaluation: Evaluation | null): void {
    this.undoStack.push({
      patchwork: clonePatchwork(this.patchwork),
      evaluation: this.evaluation,
    });
    if (this.undoStack.length > UNDO_CAP) {
      this.undoStack.shift();
    }
    this.redoStack = [];
    this.patchwork = clonePatchwork(patchwork);
    this.evaluation = evaluation;
  }

  canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  undo(): boolean {
    const prev = this.undoStack.pop();
    if (!prev) return false;
    this.redoStack.push({
      patchwork: clonePatchwork(this.patchwork),
      evaluation: this.evaluation,
    });
    this.patchwork = prev.patchwork;
    this.evaluation = prev.evaluation;
    return true;
  }

  redo(): boolean {
    const next = this.redoStack.pop();
    if (!next) return false;
    this.undoStack.push({
      patchwork: clonePatchwork(this.patchwork),
      evaluation: this.evaluation,
    });
    this.patchwork = next.patchwork;
    this.evaluation = next.evaluation;
    return true;
  }

  /** Replace the whole session (e.g. after loading a file); history clears
   * because the loaded state has no past. */
  reset(patchwork: PatchworkFile): void {
    this.patchwork = clonePatchwork(patchwork);
    this.evaluation = null;
    this.undoStack = [];
    this.redoStack = [];
  }

  setTarget(text: string | null): void {
    this.targetText = text && text.trim() ? text : null;
  }

  targetStatus(): TargetStatus {
    if (this.targetText === null) {
      return { kind: "hidden" };
    }
    let target: string;
    let want;
    try {
      target = normalizeSchemeText(this.targetText);
      want = schemeStats(target);
    } catch (err) {
      return { kind: "invalid", message: err instanceof Error ? err.message : String(err) };
    }
    if (!this.evaluation) {
      return { kind: "searching", target, dp: want.p, dn: want.n };
    }
    if (normalizeSchemeText(this.evaluation.scheme) === target) {
      return { kind: "matched", target };
    }
    return {
      kind: "searching",
      target,
      dp: want.p - this.evaluation.p,
      dn: want.n - this.evaluation.n,
    };
  }

  save(): string {
    return serializePatchwork(this.patchwork);
  }

  static load(text: string): SessionState {
    return new SessionState(parsePatchwork(text));
  }
}
