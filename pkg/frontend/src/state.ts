/**
 * Editor state machine.
 *
 * Every displayed color string comes verbatim from a server response; the UI
 * performs no color math of its own. Slider moves become delta edits against
 * the last accepted position; a reverted response snaps the slider back. At
 * most one transform request is in flight, and slider events arriving
 * meanwhile coalesce to the latest value (last write wins).
 */

import {
  Api,
  ApiError,
  Catalog,
  EditRequest,
  RampResponse,
  SealedState,
} from "./api.js";

export type SliderName = "rotate_ab" | "translate_l" | "scale" | "arm_rotation";

export const SLIDER_RANGES: Record<SliderName, [number, number]> = {
  rotate_ab: [-180, 180],
  translate_l: [-50, 50],
  scale: [0.5, 2],
  arm_rotation: [-60, 60],
};

export const SLIDER_NEUTRAL: Record<SliderName, number> = {
  rotate_ab: 0,
  translate_l: 0,
  scale: 1,
  arm_rotation: 0,
};

export interface Sliders {
  rotate_ab: number;
  translate_l: number;
  scale: number;
  arm_rotation: number;
}

export interface UiState {
  seedHex: string;
  selectedModel: string | null;
  kind: "sequential" | "diverging";
  sliders: Sliders;
  colors: string[];
  projectionAb: [number, number][];
  projectionLc: [number, number][];
  gamutStatus: string;
  catalog: Catalog | null;
  warning: string | null;
  error: string | null;
  busy: boolean;
}

export function clampSlider(name: SliderName, value: number): number {
  const [lo, hi] = SLIDER_RANGES[name];
  return Math.min(hi, Math.max(lo, value));
}

function neutralSliders(): Sliders {
  return { ...SLIDER_NEUTRAL };
}

type Listener = (state: UiState) => void;

export class RampEditor {
  private state: UiState = {
    seedHex: "#336699",
    selectedModel: null,
    kind: "sequential",
    sliders: neutralSliders(),
    colors: [],
    projectionAb: [],
    projectionLc: [],
    gamutStatus: "clean",
    catalog: null,
    warning: null,
    error: null,
    busy: false,
  };

  /** slider positions the server last accepted */
  private accepted: Sliders = neutralSliders();
  private serverState: SealedState | null = null;
  private listeners: Listener[] = [];
  private inflight = false;
  private pending: { name: SliderName; value: number } | null = null;

  constructor(private readonly api: Api) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.snapshot());
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  snapshot(): UiState {
    return {
      ...this.state,
      sliders: { ...this.state.sliders },
      colors: [...this.state.colors],
    };
  }

  private emit(patch: Partial<UiState>) {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) {
      listener(this.snapshot());
    }
  }

  async loadCatalog(): Promise<void> {
    try {
      const catalog = await this.api.getModels();
      this.emit({ catalog, error: null });
    } catch (err) {
      this.emit({ error: describe(err) });
    }
  }

  async setSeed(seedHex: string): Promise<void> {
    this.emit({ seedHex });
    if (this.state.selectedModel) {
      await this.reseed();
    }
  }

  async selectModel(modelId: string): Promise<void> {
    this.emit({ selectedModel: modelId });
    await this.reseed();
  }

  async setKind(kind: "sequential" | "diverging"): Promise<void> {
    this.emit({ kind });
    if (this.state.selectedModel) {
      await this.reseed();
    }
  }

  /** Seed (or re-seed) the selected model; resets the edit history. */
  async reseed(): Promise<void> {
    const model = this.state.selectedModel;
    if (!model) {
      return;
    }
    this.emit({ busy: true });
    try {
      const response = await this.api.seed({
        model_id: model,
        seed_hex: this.state.seedHex,
        kind: this.state.kind,
        arm_rotation: this.state.kind === "diverging" ? this.state.sliders.arm_rotation : 0,
      });
      const keepArm = this.state.sliders.arm_rotation;
      this.accepted = neutralSliders();
      this.accepted.arm_rotation = keepArm;
      this.applyResponse(response, { ...this.accepted });
      this.emit({ error: null, warning: null });
    } catch (err) {
      this.emit({ error: describe(err) });
    } finally {
      this.emit({ busy: false });
    }
  }

  /**
   * Move a slider. The arm-rotation slider re-seeds the diverging ramp; the
   * others send a delta edit relative to the last accepted position.
   */
  async sliderChange(name: SliderName, rawValue: number): Promise<void> {
    const value = clampSlider(name, rawValue);
    this.emit({ sliders: { ...this.state.sliders, [name]: value } });
    if (name === "arm_rotation") {
      await this.reseed();
      return;
    }
    if (this.inflight) {
      this.pending = { name, value }; // last write wins
      return;
    }
    await this.issueTransform(name, value);
  }

  async toggleReflect(): Promise<void> {
    if (!this.serverState || this.inflight) {
      return;
    }
    await this.sendEdit({ reflect: true }, null);
  }

  private async issueTransform(name: SliderName, value: number): Promise<void> {
    const edit: EditRequest = {};
    if (name === "rotate_ab") {
      edit.rotate_ab_degrees = value - this.accepted.rotate_ab;
    } else if (name === "translate_l") {
      edit.translate_l = value - this.accepted.translate_l;
    } else {
      edit.scale = value / this.accepted.scale;
    }
    await this.sendEdit(edit, { name, value });
  }

  private async sendEdit(
    edit: EditRequest,
    slider: { name: SliderName; value: number } | null,
  ): Promise<void> {
    if (!this.serverState) {
      return;
    }
    this.inflight = true;
    this.emit({ busy: true });
    try {
      const response = await this.api.transform(this.serverState, edit);
      if (response.gamut_status === "reverted") {
        // snap the slider back to its last accepted position
        const sliders = { ...this.state.sliders };
        if (slider) {
          sliders[slider.name] = this.accepted[slider.name];
        }
        this.serverState = response.state;
        this.emit({
          sliders,
          colors: response.colors_hex,
          projectionAb: response.curve_projection_ab,
          projectionLc: response.curve_projection_lc,
          gamutStatus: "reverted",
          warning: "edit leaves the displayable gamut; reverted",
        });
      } else {
        if (slider) {
          this.accepted[slider.name] = slider.value;
        }
        this.applyResponse(response, { ...this.state.sliders });
        this.emit({ warning: null });
      }
    } catch (err) {
      this.emit({ error: describe(err) });
    } finally {
      this.inflight = false;
      this.emit({ busy: false });
      const next = this.pending;
      this.pending = null;
      if (next) {
        await this.issueTransform(next.name, clampSlider(next.name, next.value));
      }
    }
  }

  private applyResponse(response: RampResponse, sliders: Sliders) {
    this.serverState = response.state;
    this.emit({
      sliders,
      colors: response.colors_hex,
      projectionAb: response.curve_projection_ab,
      projectionLc: response.curve_projection_lc,
      gamutStatus: response.gamut_status,
    });
  }

  /** Copy the current ramp: the clipboard gets the server's export text verbatim. */
  async copyRamp(
    format: "hex" | "lab" | "css",
    writeClipboard: (text: string) => Promise<void>,
  ): Promise<string | null> {
    if (!this.serverState) {
      return null;
    }
    try {
      const text = await this.api.exportRamp(this.serverState, format);
      await writeClipboard(text);
      return text;
    } catch (err) {
      this.emit({ error: describe(err) });
      return null;
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return err.message;
  }
  return String(err);
}
