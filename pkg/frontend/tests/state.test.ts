import { describe, expect, it } from "vitest";

import { Evaluation, PatchworkFile } from "../src/api.js";
import { SessionState } from "../src/state.js";

function pw(signs: string): PatchworkFile {
  return { degree: 2, triangulation: "honeycomb2", signs };
}

function ev(scheme: string, p = 1, n = 0): Evaluation {
  return {
    scheme,
    p,
    n,
    loops: p + n,
    max_depth: 0,
    loop_list: [],
    regions: [],
    nesting: { region: 0, children: [] },
  };
}

describe("undo/redo", () => {
  it("restores bit-exact prior state", () => {
    const s = new SessionState(pw("111111"));
    s.applyEvaluation(s.nextSeq(), ev("<1>"));
    s.commit(pw("111110"), ev("<1>"));
    s.commit(pw("111100"), ev("<2>", 2));
    expect(s.patchwork.signs).toBe("111100");
    expect(s.undo()).toBe(true);
    expect(s.patchwork.signs).toBe("111110");
    expect(s.undo()).toBe(true);
    expect(s.patchwork.signs).toBe("111111");
    expect(s.evaluation?.scheme).toBe("<1>");
    expect(s.undo()).toBe(false);
    expect(s.redo()).toBe(true);
    expect(s.patchwork.signs).toBe("111110");
    expect(s.redo()).toBe(true);
    expect(s.patchwork.signs).toBe("111100");
    expect(s.redo()).toBe(false);
  });

  it("clears the redo stack on a new move", () => {
    const s = new SessionState(pw("111111"));
    s.commit(pw("111110"), null);
    s.undo();
    s.commit(pw("101111"), null);
    expect(s.redo()).toBe(false);
    expect(s.patchwork.signs).toBe("101111");
  });

  it("caps the stack at 256 moves", () => {
    const s = new SessionState(pw("111111"));
    for (let i = 0; i < 300; i++) {
      s.commit(pw(i.toString(2).padStart(6, "0").slice(0, 6)), null);
    }
    let undone = 0;
    while (s.undo()) undone++;
    expect(undone).toBe(256);
  });

  it("does not alias mutated snapshots", () => {
    const s = new SessionState(pw("111111"));
    const next = pw("111110");
    s.commit(next, null);
    next.signs = "000000";
    expect(s.patchwork.signs).toBe("111110");
    s.undo();
    expect(s.patchwork.signs).toBe("111111");
  });
});

describe("stale response discarding", () => {
  it("ignores an older evaluation arriving late", () => {
    const s = new SessionState(pw("111111"));
    const first = s.nextSeq();
    const second = s.nextSeq();
    expect(s.applyEvaluation(second, ev("<2>", 2))).toBe(true);
    expect(s.applyEvaluation(first, ev("<1>"))).toBe(false);
    expect(s.evaluation?.scheme).toBe("<2>");
  });
});

describe("target tracker", () => {
  it("hides without a target and matches canonical input", () => {
    const s = new SessionState(pw("111111"));
    expect(s.targetStatus().kind).toBe("hidden");
    s.applyEvaluation(s.nextSeq(), ev("<J u 15>", 15, 0));
    s.setTarget("⟨J ⊔ 15⟩");
    expect(s.targetStatus().kind).toBe("matched");
  });

  it("reports p/n deltas while unmatched", () => {
    const s = new SessionState(pw("111111"));
    s.applyEvaluation(s.nextSeq(), ev("<3>", 3, 0));
    s.setTarget("<9 u 1<1>>");
    const st = s.targetStatus();
    expect(st.kind).toBe("searching");
    if (st.kind === "searching") {
      expect(st.dp).toBe(7);
      expect(st.dn).toBe(1);
    }
  });

  it("flags unparsable targets", () => {
    const s = new SessionState(pw("111111"));
    s.setTarget("<9 u");
    expect(s.targetStatus().kind).toBe("invalid");
    s.setTarget("");
    expect(s.targetStatus().kind).toBe("hidden");
  });
});

describe("save/load", () => {
  it("round-trips byte-identically", () => {
    const s = new SessionState({
      degree: 2,
      triangulation: {
        degree: 2,
        triangles: [
          [[0, 0], [0, 1], [1, 0]],
          [[0, 1], [1, 0], [1, 1]],
          [[1, 0], [1, 1], [2, 0]],
          [[0, 1], [0, 2], [1, 1]],
        ],
      },
      signs: "111111",
    });
    const text = s.save();
    const loaded = SessionState.load(text);
    expect(loaded.save()).toBe(text);
    const viaKey = new SessionState(pw("101001"));
    const text2 = viaKey.save();
    expect(SessionState.load(text2).save()).toBe(text2);
  });
});
