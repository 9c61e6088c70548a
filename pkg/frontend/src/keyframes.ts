import type { Controller } from "./controller";
import type { Store } from "./store";
import { clear, el } from "./dom";
import { highlightFrame } from "./heatmap";

// Panel D: the keyframe strip.  Each tile shows its frame number, carries
// an include/exclude checkbox, and clicking the tile opens the in-browser
// zoom overlay while the matching heatmap column stays highlighted.

function tileArt(frame: number, imageRef: string): HTMLElement {
  // the data directory stores image refs, not bytes; tiles render as
  // numbered placeholders tinted per frame so the strip stays scannable
  const hue = (frame * 37) % 360;
  return el(
    "div",
    {
      class: "tile-art",
      style: `background:hsl(${hue} 35% 72%)`,
      title: imageRef,
    },
    el("span", { class: "frame-no" }, String(frame)),
  );
}

function openZoom(frame: number, imageRef: string): void {
  const overlay = el(
    "div",
    { class: "zoom-overlay", "data-testid": "zoom-overlay" },
    el(
      "div",
      { class: "zoom-box" },
      el("div", { class: "zoom-title" }, `Frame ${frame}`),
      tileArt(frame, imageRef),
      el("div", { class: "zoom-ref" }, imageRef),
      el("button", { class: "zoom-close", type: "button" }, "Close"),
    ),
  );
  overlay.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target === overlay || target.closest(".zoom-close")) {
      overlay.remove();
      highlightFrame(null);
    }
  });
  document.body.append(overlay);
}

export function mountKeyframes(
  container: HTMLElement,
  ctrl: Controller,
  store: Store,
): void {
  container.classList.add("keyframe-panel");

  container.addEventListener("change", (event) => {
    const box = event.target as HTMLInputElement;
    if (box.type !== "checkbox" || !box.dataset.frame) return;
    void ctrl.setFrameIncluded(Number(box.dataset.frame), box.checked);
  });

  container.addEventListener("click", (event) => {
    const art = (event.target as HTMLElement).closest<HTMLElement>(".tile-art");
    if (!art || !container.contains(art)) return;
    const tile = art.closest<HTMLElement>(".tile");
    if (!tile) return;
    const frame = Number(tile.dataset.frame);
    highlightFrame(frame);
    ctrl.logZoom(frame);
    openZoom(frame, tile.dataset.imageRef ?? "");
  });

  const render = () => {
    clear(container);
    const { segment, snapshot } = store.state;
    if (!segment) return;
    const included = new Set(snapshot?.included_frames ?? []);
    const live = snapshot !== null && snapshot.status === "active";

    const strip = el("div", { class: "keyframe-strip" });
    for (const kf of segment.frames) {
      const tile = el(
        "div",
        {
          class: "tile",
          "data-frame": kf.index,
          "data-image-ref": kf.image_ref,
        },
        tileArt(kf.index, kf.image_ref),
        el("label", { class: "include" }, checkbox(kf.index, included, live), " use"),
      );
      strip.append(tile);
    }
    container.append(
      el("div", { class: "panel-title" }, `Keyframes — ${segment.video_id}`),
      strip,
    );
  };

  const checkbox = (frame: number, included: Set<number>, live: boolean) => {
    const box = el("input", { type: "checkbox", "data-frame": frame });
    box.checked = snapshotChecked(frame, included, live);
    box.disabled = !live;
    return box;
  };

  const snapshotChecked = (frame: number, included: Set<number>, live: boolean) =>
    live ? included.has(frame) : true;

  store.subscribe(render);
  render();
}
