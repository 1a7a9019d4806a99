/** Typed client for the evaluation service.  All topology is computed
 * server-side; the client only ships payloads back and forth. */

export interface TriangulationObject {
  degree: number;
  triangles: number[][][];
  lifting?: number[];
}

export interface PatchworkFile {
  degree: number;
  triangulation: string | TriangulationObject;
  signs: string;
}

export interface LoopInfo {
  kind: "oval" | "pseudo_line";
  incident_regions: number[];
  segments: number[][][];
}

export interface RegionInfo {
  id: number;
  is_root: boolean;
  vertices: number[][];
}

export interface NestingNode {
  region: number;
  children: NestingNode[];
}

export interface Evaluation {
  scheme: string;
  p: number;
  n: number;
  loops: number;
  max_depth: number;
  loop_list: LoopInfo[];
  regions: RegionInfo[];
  nesting: NestingNode;
}

export interface CatalogEntry {
  key: string;
  degree: number;
  triangles: number;
  triangulation: TriangulationObject;
}

export interface FlipResponse {
  patchwork: PatchworkFile;
  is_bridge_flip: boolean;
  root_isotopic: boolean;
  evaluation: Evaluation;
}

export interface ToggleResponse {
  patchwork: PatchworkFile;
  evaluation: Evaluation;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) {
      let detail = res.statusText;
      try {
        const payload = await res.json();
        detail = payload.detail ?? detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(res.status, String(detail));
    }
    return (await res.json()) as T;
  }

  async catalog(): Promise<CatalogEntry[]> {
    const res = await this.fetchFn(this.base + "/catalog");
    if (!res.ok) throw new ApiError(res.status, res.statusText);
    return (await res.json()) as CatalogEntry[];
  }

  evaluate(patchwork: PatchworkFile): Promise<Evaluation> {
    return this.post<Evaluation>("/evaluate", patchwork);
  }

  flip(patchwork: PatchworkFile, edge: number[][]): Promise<FlipResponse> {
    return this.post<FlipResponse>("/flip", { patchwork, edge });
  }

  toggle(patchwork: PatchworkFile, point: number[]): Promise<ToggleResponse> {
    return this.post<ToggleResponse>("/toggle", { patchwork, point });
  }
}

/** Canonical serialization used for save files; loading then saving a file
 * produced here is byte-identical. */
export function serializePatchwork(pw: PatchworkFile): string {
  const tri =
    typeof pw.triangulation === "string"
      ? JSON.stringify(pw.triangulation)
      : serializeTriangulation(pw.triangulation);
  return `{"degree": ${pw.degree}, "triangulation": ${tri}, "signs": "${pw.signs}"}\n`;
}

function serializeTriangulation(t: TriangulationObject): string {
  const tris = t.triangles
    .map((tri) => `[${tri.map((p) => `[${p[0]}, ${p[1]}]`).join(", ")}]`)
    .join(", ");
  const lift = t.lifting ? `, "lifting": [${t.lifting.join(", ")}]` : "";
  return `{"degree": ${t.degree}, "triangles": [${tris}]${lift}}`;
}

export function parsePatchwork(text: string): PatchworkFile {
  const obj = JSON.parse(text);
  if (
    typeof obj.degree !== "number" ||
    typeof obj.signs !== "string" ||
    (typeof obj.triangulation !== "string" && typeof obj.triangulation !== "object")
  ) {
    throw new Error("not a patchwork file");
  }
  return obj as PatchworkFile;
}
