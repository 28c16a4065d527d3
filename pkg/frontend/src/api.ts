/**
 * Typed client for the ramp service. The fetch implementation is injected so
 * tests can intercept every request and account for every color string the
 * UI ever receives.
 */

export interface ModelSummary {
  id: string;
  method: string;
  cluster_size: number;
  l_profile: number[];
  preview_hex: string[];
}

export interface Catalog {
  models: ModelSummary[];
  diverging_angle_degrees: number;
  diverging_rotation_limit_degrees: number;
}

/** Sealed server state; opaque except for being JSON. */
export type SealedState = Record<string, unknown>;

export interface RampResponse {
  colors_hex: string[];
  colors_lab: number[][];
  curve_projection_ab: [number, number][];
  curve_projection_lc: [number, number][];
  gamut_status: string;
  state: SealedState;
}

export interface EditRequest {
  translate_l?: number;
  translate_a?: number;
  translate_b?: number;
  rotate_ab_degrees?: number;
  scale?: number;
  reflect?: boolean;
}

export interface SeedRequest {
  model_id: string;
  seed_hex: string;
  kind: "sequential" | "diverging";
  n?: number;
  arm_rotation?: number;
}

interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export interface Api {
  getModels(): Promise<Catalog>;
  seed(request: SeedRequest): Promise<RampResponse>;
  transform(state: SealedState, edit: EditRequest): Promise<RampResponse>;
  exportRamp(state: SealedState, format: "hex" | "lab" | "css"): Promise<string>;
}

async function request<T>(fetchFn: FetchLike, url: string, body?: unknown): Promise<T> {
  const init = body === undefined
    ? undefined
    : {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      };
  let response: FetchResponse;
  try {
    response = await fetchFn(url, init);
  } catch (err) {
    throw new ApiError(0, `network failure: ${String(err)}`);
  }
  const payload = (await response.json().catch(() => ({}))) as Record<string, unknown>;
  if (!response.ok) {
    const detail = typeof payload.detail === "string" ? payload.detail : `HTTP ${response.status}`;
    throw new ApiError(response.status, detail);
  }
  return payload as T;
}

export function createApi(fetchFn: FetchLike, base = ""): Api {
  return {
    getModels: () => request<Catalog>(fetchFn, `${base}/api/models`),
    seed: (body) => request<RampResponse>(fetchFn, `${base}/api/seed`, body),
    transform: (state, edit) =>
      request<RampResponse>(fetchFn, `${base}/api/transform`, { state, edit }),
    exportRamp: async (state, format) => {
      const out = await request<{ text: string }>(fetchFn, `${base}/api/export`, {
        state,
        format,
      });
      return out.text;
    },
  };
}
