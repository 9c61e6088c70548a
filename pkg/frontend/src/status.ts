import type { Store } from "./store";
import { clear, el } from "./dom";

/** Inline service errors and one-line notices; never a modal. */
export function mountStatus(container: HTMLElement, store: Store): void {
  container.classList.add("status-line");

  const render = () => {
    clear(container);
    const { error, notice } = store.state;
    if (error) {
      container.append(el("span", { class: "error", role: "alert" }, error));
    } else if (notice) {
      container.append(el("span", { class: "notice" }, notice));
    }
  };

  store.subscribe(render);
  render();
}
