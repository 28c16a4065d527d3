/** DOM wiring: gallery, sliders, projections, copy buttons. */

import { createApi } from "./api.js";
import { drawProjection } from "./plots.js";
import { RampEditor, SLIDER_RANGES, SliderName, UiState } from "./state.js";

const api = createApi((url, init) => fetch(url, init));
const editor = new RampEditor(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node as T;
}

const gallery = el<HTMLDivElement>("gallery");
const rampStrip = el<HTMLDivElement>("ramp");
const statusLine = el<HTMLDivElement>("status");
const errorBanner = el<HTMLDivElement>("error");
const seedInput = el<HTMLInputElement>("seed");
const kindSelect = el<HTMLSelectElement>("kind");
const abCanvas = el<HTMLCanvasElement>("plot-ab");
const lcCanvas = el<HTMLCanvasElement>("plot-lc");
const fallback = el<HTMLDivElement>("copy-fallback");
const fallbackText = el<HTMLTextAreaElement>("copy-text");

const sliderNames: SliderName[] = ["rotate_ab", "translate_l", "scale", "arm_rotation"];
const sliderInputs = new Map<SliderName, HTMLInputElement>();

for (const name of sliderNames) {
  const input = el<HTMLInputElement>(`slider-${name}`);
  const [lo, hi] = SLIDER_RANGES[name];
  input.min = String(lo);
  input.max = String(hi);
  input.step = name === "scale" ? "0.01" : "0.5";
  input.addEventListener("input", () => {
    void editor.sliderChange(name, Number(input.value));
  });
  sliderInputs.set(name, input);
}

seedInput.addEventListener("change", () => void editor.setSeed(seedInput.value.toUpperCase()));
kindSelect.addEventListener("change", () =>
  void editor.setKind(kindSelect.value as "sequential" | "diverging"));
el<HTMLButtonElement>("reflect").addEventListener("click", () => void editor.toggleReflect());
el<HTMLButtonElement>("retry").addEventListener("click", () => void editor.loadCatalog());

async function writeClipboard(text: string): Promise<void> {
  try {
    await navigator.clipboard.writeText(text);
  } catch {
    // clipboard unavailable: show selectable text instead
    fallback.hidden = false;
    fallbackText.value = text;
    fallbackText.select();
  }
}

for (const format of ["hex", "lab", "css"] as const) {
  el<HTMLButtonElement>(`copy-${format}`).addEventListener("click", () => {
    void editor.copyRamp(format, writeClipboard);
  });
}
el<HTMLButtonElement>("copy-close").addEventListener("click", () => {
  fallback.hidden = true;
});

function swatch(hex: string): HTMLDivElement {
  const cell = document.createElement("div");
  cell.className = "swatch";
  cell.style.background = hex;
  cell.title = hex;
  return cell;
}

function renderGallery(state: UiState): void {
  gallery.textContent = "";
  if (!state.catalog) {
    return;
  }
  if (state.catalog.models.length === 0) {
    gallery.textContent = "no models in this book";
    return;
  }
  for (const model of state.catalog.models) {
    const strip = document.createElement("button");
    strip.className = "strip" + (model.id === state.selectedModel ? " selected" : "");
    for (const hex of model.preview_hex) {
      strip.appendChild(swatch(hex));
    }
    const label = document.createElement("span");
    label.textContent = `${model.id} (${model.cluster_size})`;
    strip.appendChild(label);
    strip.addEventListener("click", () => void editor.selectModel(model.id));
    gallery.appendChild(strip);
  }
}

editor.subscribe((state) => {
  renderGallery(state);

  rampStrip.textContent = "";
  for (const hex of state.colors) {
    rampStrip.appendChild(swatch(hex));
  }

  statusLine.textContent = state.colors.length
    ? `gamut: ${state.gamutStatus}${state.warning ? ": " + state.warning : ""}`
    : "pick a model to seed it with the chosen color";
  statusLine.classList.toggle("warn", Boolean(state.warning));

  errorBanner.hidden = !state.error;
  if (state.error) {
    el<HTMLSpanElement>("error-text").textContent = state.error;
  }

  for (const name of sliderNames) {
    const input = sliderInputs.get(name);
    if (input && document.activeElement !== input) {
      input.value = String(state.sliders[name]);
    }
    if (input) {
      const row = input.closest(".slider-row") as HTMLElement | null;
      if (row) {
        row.hidden = name === "arm_rotation" ? state.kind !== "diverging" : false;
      }
    }
  }
  el<HTMLButtonElement>("reflect").disabled = state.kind === "diverging";

  drawProjection(abCanvas, state.projectionAb, state.colors);
  drawProjection(lcCanvas, state.projectionLc, state.colors);
});

void editor.loadCatalog();
