import type { Controller } from "./controller";
import { snapRating } from "./controller";
import type { Store } from "./store";
import { clear, el } from "./dom";

// Panels H, I and J: the rating slider (0–100, hard 10-step snapping), the
// optional comment box, and the record-and-reset button.

export function mountRating(
  container: HTMLElement,
  ctrl: Controller,
  store: Store,
): void {
  container.classList.add("rating-panel");

  const slider = el("input", {
    type: "range",
    min: 0,
    max: 100,
    step: 10,
    "data-testid": "rating-slider",
  });
  const readout = el("span", { class: "rating-readout" }, "—");
  const comment = el("textarea", {
    class: "comment-box",
    placeholder: "Observations (optional)",
    "data-testid": "comment-box",
  });
  const record = el(
    "button",
    { type: "button", class: "record-btn", "data-testid": "record-btn" },
    "Record response and reset",
  );

  slider.addEventListener("change", () => {
    // the step attribute guides the pointer, but snapping here is what
    // guarantees only multiples of 10 ever reach the server
    void ctrl.rate(snapRating(Number(slider.value)));
  });

  record.addEventListener("click", () => {
    void ctrl.recordAndReset(comment.value).then(() => {
      if (!store.state.error) comment.value = "";
    });
  });

  const render = () => {
    const snapshot = store.state.snapshot;
    const live = snapshot !== null && snapshot.status === "active";
    slider.disabled = !live;
    comment.disabled = !live;
    record.disabled = !live || snapshot?.rating === null || store.state.busy;
    if (snapshot?.rating != null) {
      slider.value = String(snapshot.rating);
      readout.textContent = `${snapshot.rating}%`;
    } else {
      slider.value = "50";
      readout.textContent = "—";
    }
  };

  container.append(
    el("div", { class: "panel-title" }, "Rating"),
    el(
      "div",
      { class: "slider-row" },
      el("span", { class: "slider-end" }, "random"),
      slider,
      el("span", { class: "slider-end" }, "perfect"),
      readout,
    ),
    comment,
    record,
  );
  store.subscribe(render);
  render();
}
