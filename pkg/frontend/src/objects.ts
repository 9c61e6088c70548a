import type { Controller } from "./controller";
import type { Store } from "./store";
import { clear, el } from "./dom";

export const OBJECT_CAP = 16;

/**
 * Panel E: the object picker.  Suggestions come from the dataset
 * vocabulary by substring; a leading '*' marks the entry as a spy, which
 * renders as a violet chip and always sorts after the regular objects.
 */
export function suggestionsFor(
  vocabulary: string[],
  raw: string,
  taken: Set<string>,
  limit = 8,
): string[] {
  const spy = raw.startsWith("*");
  const query = (spy ? raw.slice(1) : raw).trim().toLowerCase();
  if (!query) return [];
  const hits = vocabulary.filter(
    (name) => name.toLowerCase().includes(query) && !taken.has(name),
  );
  return hits.slice(0, limit).map((name) => (spy ? `*${name}` : name));
}

export function mountObjects(
  container: HTMLElement,
  ctrl: Controller,
  store: Store,
): void {
  container.classList.add("objects-panel");

  const input = el("input", {
    type: "text",
    class: "obj-input",
    placeholder: "Add object… (*name for a spy)",
    "data-testid": "obj-input",
  });
  const suggestBox = el("div", { class: "suggest" });
  const chips = el("div", { class: "chips", "data-testid": "chips" });
  const clearAll = el(
    "button",
    { type: "button", class: "clear-all", title: "Remove all objects" },
    "✕ all",
  );

  const submit = (raw: string) => {
    const name = raw.trim();
    if (!name) return;
    input.value = "";
    renderSuggestions();
    void ctrl.addObject(name);
  };

  input.addEventListener("input", () => renderSuggestions());
  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter") submit(input.value);
  });
  suggestBox.addEventListener("mousedown", (event) => {
    const item = (event.target as HTMLElement).closest<HTMLElement>(".suggest-item");
    if (item) submit(item.dataset.value ?? "");
  });
  chips.addEventListener("click", (event) => {
    const cross = (event.target as HTMLElement).closest<HTMLElement>(".chip-x");
    if (cross) void ctrl.removeObject(cross.dataset.name ?? "");
  });
  clearAll.addEventListener("click", () => void ctrl.clearObjects());

  const renderSuggestions = () => {
    clear(suggestBox);
    const { dataset, snapshot } = store.state;
    if (!dataset || !snapshot) return;
    const taken = new Set(snapshot.selected_objects.map((o) => o.name));
    for (const value of suggestionsFor(dataset.vocabulary, input.value, taken)) {
      suggestBox.append(
        el("div", { class: "suggest-item", "data-value": value }, value),
      );
    }
  };

  const render = () => {
    const snapshot = store.state.snapshot;
    const live = snapshot !== null && snapshot.status === "active";
    const selected = snapshot?.selected_objects ?? [];
    const full = selected.length >= OBJECT_CAP;
    input.disabled = !live || full;
    input.placeholder = full
      ? `Limit of ${OBJECT_CAP} objects reached`
      : "Add object… (*name for a spy)";
    clearAll.disabled = !live || selected.length === 0;

    clear(chips);
    // spies go last regardless of when they were added
    const ordered = [
      ...selected.filter((o) => !o.is_spy),
      ...selected.filter((o) => o.is_spy),
    ];
    for (const obj of ordered) {
      chips.append(
        el(
          "span",
          { class: obj.is_spy ? "chip spy" : "chip", "data-name": obj.name },
          obj.is_spy ? `*${obj.name}` : obj.name,
          el(
            "button",
            {
              type: "button",
              class: "chip-x",
              "data-name": obj.name,
              title: `Remove ${obj.name}`,
            },
            "×",
          ),
        ),
      );
    }
  };

  container.append(
    el("div", { class: "panel-title" }, "Objects"),
    el("div", { class: "obj-entry" }, input, clearAll),
    suggestBox,
    chips,
  );
  store.subscribe(render);
  render();
}
