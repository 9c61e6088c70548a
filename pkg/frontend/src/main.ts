import "./styles.css";
import { Client } from "./api";
import { Controller } from "./controller";
import { mountHeader } from "./header";
import { mountHeatmap } from "./heatmap";
import { mountKeyframes } from "./keyframes";
import { mountObjects } from "./objects";
import { mountRating } from "./rating";
import { mountStatus } from "./status";
import { Store } from "./store";
import { el } from "./dom";

export function buildApp(root: HTMLElement, api: Client): Controller {
  const store = new Store();
  const ctrl = new Controller(api, store);

  const header = el("header", { id: "panel-header" });
  const status = el("div", { id: "panel-status" });
  const objects = el("section", { id: "panel-objects" });
  const keyframes = el("section", { id: "panel-keyframes" });
  const heatmap = el("section", { id: "panel-heatmap" });
  const rating = el("section", { id: "panel-rating" });

  root.append(
    header,
    status,
    el("main", { class: "board" }, objects, keyframes, heatmap, rating),
  );

  mountHeader(header, ctrl, store);
  mountStatus(status, store);
  mountObjects(objects, ctrl, store);
  mountKeyframes(keyframes, ctrl, store);
  mountHeatmap(heatmap, ctrl, store);
  mountRating(rating, ctrl, store);
  return ctrl;
}

const rootEl = document.getElementById("app");
if (rootEl) {
  const ctrl = buildApp(rootEl, new Client());
  void ctrl.boot();
}
