import type { Controller } from "./controller";
import type { Store } from "./store";
import { clear, el } from "./dom";

// Panel F (binary heatmap) and panel G (per-frame modification bars).
// Colors come entirely from CSS driven by the `mode-*` class and each
// cell's data-on attribute, so switching palettes never rewrites content.

export function highlightFrame(frame: number | null): void {
  for (const node of document.querySelectorAll(".frame-hl")) {
    node.classList.remove("frame-hl");
  }
  if (frame === null) return;
  for (const node of document.querySelectorAll(`[data-frame="${frame}"]`)) {
    node.classList.add("frame-hl");
  }
}

export function mountHeatmap(
  container: HTMLElement,
  ctrl: Controller,
  store: Store,
): void {
  container.classList.add("heatmap-panel");

  container.addEventListener("click", (event) => {
    const cell = (event.target as HTMLElement).closest<HTMLElement>("td.cell");
    if (!cell || !container.contains(cell)) return;
    const object = cell.dataset.object ?? "";
    const frame = Number(cell.dataset.frame);
    void ctrl.toggleCell(object, frame);
  });

  container.addEventListener("mouseover", (event) => {
    const cell = (event.target as HTMLElement).closest<HTMLElement>("td.cell");
    if (!cell || !container.contains(cell)) return;
    const frame = Number(cell.dataset.frame);
    highlightFrame(frame);
    ctrl.logHover(cell.dataset.object ?? "", frame);
  });

  container.addEventListener("mouseleave", () => highlightFrame(null));

  const render = () => {
    clear(container);
    const payload = store.state.grid;
    if (!payload) return;
    const { grid, modification_summary } = payload;

    const table = el("table", {
      class: `heatmap mode-${store.state.palette}`,
      "data-testid": "heatmap",
    });
    const headRow = el("tr", {}, el("th", { class: "corner" }));
    for (const frame of grid.frames) {
      headRow.append(
        el("th", { class: "frame-head", "data-frame": frame }, String(frame)),
      );
    }
    table.append(el("thead", {}, headRow));

    const body = el("tbody");
    for (const row of grid.rows) {
      const tr = el("tr", { class: row.is_spy ? "spy" : "" });
      tr.append(
        el("th", { class: "obj-label", scope: "row" }, row.object),
      );
      row.shown.forEach((on, i) => {
        const frame = grid.frames[i]!;
        tr.append(
          el("td", {
            class: "cell" + (row.toggled[i] ? " flipped" : ""),
            "data-object": row.object,
            "data-frame": frame,
            "data-on": on ? "1" : "0",
            role: "button",
            title: `${row.object} / frame ${frame}`,
          }),
        );
      });
      body.append(tr);
    }
    table.append(body);

    // panel G: one bar per included frame, counting that frame's toggles
    const counts = grid.frames.map(
      (frame) => modification_summary.counts[String(frame)] ?? 0,
    );
    const peak = Math.max(1, ...counts);
    const bars = el("div", { class: "modbars", "data-testid": "modbars" });
    counts.forEach((count, i) => {
      const bar = el(
        "div",
        { class: "modbar", "data-frame": grid.frames[i]!, "data-count": count },
        el("span", {
          class: "fill",
          style: `height:${Math.round((count / peak) * 100)}%`,
        }),
        el("span", { class: "count" }, String(count)),
      );
      bars.append(bar);
    });

    container.append(
      table,
      el(
        "div",
        { class: "modbars-wrap" },
        el("div", { class: "modbars-title" }, `Edits: ${modification_summary.total}`),
        bars,
      ),
    );
  };

  store.subscribe(render);
  render();
}
