import { describe, expect, it } from "vitest";

import { ApiError, createApi, FetchLike } from "../src/api.js";

function jsonResponse(payload: unknown, status = 200) {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => payload,
  };
}

describe("createApi", () => {
  it("hits the documented endpoints with JSON bodies", async () => {
    const calls: { url: string; body?: string }[] = [];
    const fetchFn: FetchLike = async (url, init) => {
      calls.push({ url, body: init?.body });
      if (url.endsWith("/api/models")) {
        return jsonResponse({ models: [], diverging_angle_degrees: 115, diverging_rotation_limit_degrees: 60 });
      }
      if (url.endsWith("/api/export")) {
        return jsonResponse({ format: "hex", text: "#000000\n" });
      }
      return jsonResponse({
        colors_hex: ["#000000"],
        colors_lab: [[0, 0, 0]],
        curve_projection_ab: [[0, 0]],
        curve_projection_lc: [[0, 0]],
        gamut_status: "clean",
        state: { sig: "x" },
      });
    };
    const api = createApi(fetchFn, "http://test");

    await api.getModels();
    await api.seed({ model_id: "kmeans-0", seed_hex: "#336699", kind: "sequential" });
    await api.transform({ sig: "x" }, { rotate_ab_degrees: 10 });
    const text = await api.exportRamp({ sig: "x" }, "hex");

    expect(calls.map((c) => c.url)).toEqual([
      "http://test/api/models",
      "http://test/api/seed",
      "http://test/api/transform",
      "http://test/api/export",
    ]);
    expect(JSON.parse(calls[1].body!)).toMatchObject({ model_id: "kmeans-0" });
    expect(JSON.parse(calls[2].body!)).toMatchObject({ edit: { rotate_ab_degrees: 10 } });
    expect(text).toBe("#000000\n");
  });

  it("maps error payloads to ApiError with the server detail", async () => {
    const fetchFn: FetchLike = async () => jsonResponse({ detail: "no model with id 'x'" }, 404);
    const api = createApi(fetchFn);
    await expect(api.seed({ model_id: "x", seed_hex: "#000000", kind: "sequential" }))
      .rejects.toThrowError(/no model with id/);
    try {
      await api.getModels();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(404);
    }
  });

  it("wraps network failures", async () => {
    const fetchFn: FetchLike = async () => {
      throw new Error("connection refused");
    };
    const api = createApi(fetchFn);
    await expect(api.getModels()).rejects.toThrowError(/network failure/);
  });
});
