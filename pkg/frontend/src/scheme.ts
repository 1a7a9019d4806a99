/** Syntactic helpers for the scheme notation: normalization of user input to
 * the ASCII grammar and counting statistics off the notation.  No topology
 * happens here; canonical scheme strings always come from the server. */

export function normalizeSchemeText(text: string): string {
  let s = text
    .replace(/⟨/g, "<")
    .replace(/⟩/g, ">")
    .replace(/[⨆⊔]/g, "u")
    .replace(/\s+/g, "");
  s = s.replace(/u/g, " u ");
  return s;
}

export interface SchemeStats {
  loops: number;
  p: number;
  n: number;
}

/** Parse the grammar far enough to count loops and even/odd ovals; throws on
 * malformed input. */
export function schemeStats(text: string): SchemeStats {
  const src = normalizeSchemeText(text).replace(/\s+/g, "");
  let pos = 0;
  let pseudo = 0;
  let p = 0;
  let n = 0;

  function fail(msg: string): never {
    throw new Error(`${msg} at position ${pos} of ${JSON.stringify(src)}`);
  }

  function parseItems(depth: number): void {
    for (;;) {
      if (src[pos] === "J") {
        if (depth !== 0) fail("J must be at the top level");
        pseudo += 1;
        pos += 1;
      } else {
        const m = /^\d+/.exec(src.slice(pos));
        if (!m) fail("expected a count");
        const count = parseInt(m[0], 10);
        pos += m[0].length;
        if (src[pos] === "<") {
          pos += 1;
          const before = [p, n];
          parseItems(depth + 1);
          if (src[pos] !== ">") fail("expected '>'");
          pos += 1;
          // the group repeats count times; replay the delta
          const dp = p - before[0];
          const dn = n - before[1];
          p += dp * (count - 1);
          n += dn * (count - 1);
          if (depth % 2 === 0) p += count;
          else n += count;
        } else if (count > 0) {
          if (depth % 2 === 0) p += count;
          else n += count;
        }
      }
      if (src[pos] === "u") {
        pos += 1;
        continue;
      }
      return;
    }
  }

  if (src[pos] !== "<") fail("expected '<'");
  pos += 1;
  if (src[pos] !== ">") parseItems(0);
  if (src[pos] !== ">") fail("expected '>'");
  pos += 1;
  if (pos !== src.length) fail("trailing input");
  if (pseudo > 1) fail("duplicate pseudo-line");
  return { loops: p + n + pseudo, p, n };
}
