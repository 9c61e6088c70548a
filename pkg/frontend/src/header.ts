import type { Controller } from "./controller";
import type { Store } from "./store";
import { clear, el } from "./dom";

// Panels A, B and C — the model / task / video pickers — plus the palette
// switch and the session start button.  The task list is fixed until more
// evaluation modes exist.

const TASKS = ["Multi-object recognition (video)"];

export function mountHeader(
  container: HTMLElement,
  ctrl: Controller,
  store: Store,
): void {
  container.classList.add("header-panel");

  const render = () => {
    clear(container);
    const { models, dataset, snapshot, pickedModel, pickedSegment, palette, busy } =
      store.state;
    const live = snapshot !== null;

    const modelSel = el("select", { "data-testid": "model-select" });
    for (const m of models) {
      const opt = el("option", { value: m.model_id }, m.model_id);
      opt.selected = m.model_id === pickedModel;
      modelSel.append(opt);
    }
    modelSel.disabled = live;
    modelSel.addEventListener("change", () =>
      store.patch({ pickedModel: modelSel.value }),
    );

    const taskSel = el("select", { "data-testid": "task-select" });
    for (const t of TASKS) taskSel.append(el("option", { value: t }, t));
    taskSel.disabled = true;

    const segSel = el("select", { "data-testid": "segment-select" });
    for (const s of dataset?.segments ?? []) {
      const opt = el("option", { value: s }, s);
      opt.selected = s === pickedSegment;
      segSel.append(opt);
    }
    segSel.disabled = live;
    segSel.addEventListener("change", () => {
      store.patch({ pickedSegment: segSel.value });
      void ctrl.loadSegment();
    });

    const rater = el("input", {
      type: "text",
      class: "rater-input",
      placeholder: "rater id",
      "data-testid": "rater-input",
    });

    const start = el(
      "button",
      { type: "button", class: "start-btn", "data-testid": "start-btn" },
      "Start session",
    );
    start.disabled = live || busy || !pickedModel || !pickedSegment;
    start.addEventListener("click", () => void ctrl.startSession(rater.value));

    const paletteBox = el("input", {
      type: "checkbox",
      "data-testid": "palette-switch",
    });
    paletteBox.checked = palette === "colorblind";
    paletteBox.addEventListener("change", () =>
      ctrl.setPalette(paletteBox.checked ? "colorblind" : "default"),
    );

    container.append(
      el("span", { class: "brand" }, "ikiwisi"),
      labeled("Model", modelSel),
      labeled("Task", taskSel),
      labeled("Video", segSel),
      rater,
      start,
      el("label", { class: "palette-label" }, paletteBox, " colorblind mode"),
    );
  };

  const labeled = (text: string, control: HTMLElement) =>
    el("label", { class: "picker" }, `${text}: `, control);

  store.subscribe(render);
  render();
}
