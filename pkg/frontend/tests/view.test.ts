import { describe, expect, it } from "vitest";

import { Client } from "../src/api";
import { buildApp } from "../src/main";
import { appWithSession, FakeService, flush, freshApp } from "./helpers";

function checkboxStates(): boolean[] {
  return [
    ...document.querySelectorAll<HTMLInputElement>(
      'input[type="checkbox"][data-frame]',
    ),
  ].map((box) => box.checked);
}

describe("view state", () => {
  it("a reload resumes the session from the url hash with identical markup", async () => {
    const svc = new FakeService();
    const first = await freshApp(svc);
    // colorblind chosen up front so it becomes part of the session
    document
      .querySelector<HTMLInputElement>('[data-testid="palette-switch"]')!
      .click();
    await first.ctrl.startSession("r-7");
    await flush();
    await first.ctrl.addObject("Car");
    await first.ctrl.addObject("Tree");
    await first.ctrl.addObject("*Chair");
    await first.ctrl.toggleCell("Tree", 1);
    await first.ctrl.setFrameIncluded(3, false);
    await first.ctrl.rate(70);
    await flush();

    expect(window.location.hash).toBe("#s=fake-1");
    const html = first.root.innerHTML;
    const boxes = checkboxStates();
    const sliderValue = document.querySelector<HTMLInputElement>(
      '[data-testid="rating-slider"]',
    )!.value;

    // simulate the reload: same service, fresh dom, the hash still set
    document.body.innerHTML = '<div id="root"></div>';
    const root = document.getElementById("root") as HTMLElement;
    const ctrl = buildApp(root, new Client("", svc.fetcher));
    await ctrl.boot();
    await flush();

    expect(root.innerHTML).toBe(html);
    expect(checkboxStates()).toEqual(boxes);
    expect(
      document.querySelector<HTMLInputElement>('[data-testid="rating-slider"]')!
        .value,
    ).toBe(sliderValue);
    expect(
      document.querySelector<HTMLInputElement>('[data-testid="palette-switch"]')!
        .checked,
    ).toBe(true);
    expect(
      document.querySelector<HTMLSelectElement>('[data-testid="model-select"]')!
        .value,
    ).toBe("m-one");

    const snapshot = ctrl.store.state.snapshot!;
    expect(snapshot.selected_objects.map((o) => o.name)).toEqual([
      "Car",
      "Tree",
      "Chair",
    ]);
    expect(snapshot.included_frames).toEqual([0, 1, 2, 4]);
    expect(snapshot.toggles).toEqual([["Tree", 1]]);
    expect(snapshot.rating).toBe(70);
  });

  it("a dead session id in the hash falls back to setup with the error shown", async () => {
    const svc = new FakeService();
    window.location.hash = "s=ghost";
    document.body.innerHTML = '<div id="root"></div>';
    const root = document.getElementById("root") as HTMLElement;
    const ctrl = buildApp(root, new Client("", svc.fetcher));
    await ctrl.boot();
    await flush();

    expect(window.location.hash).toBe("");
    expect(document.querySelector('[role="alert"]')!.textContent).toContain(
      "unknown route",
    );
    const start = document.querySelector<HTMLButtonElement>(
      '[data-testid="start-btn"]',
    )!;
    expect(start.disabled).toBe(false);

    start.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await flush();
    expect(ctrl.store.state.snapshot).not.toBeNull();
    expect(document.querySelector('[role="alert"]')).toBeNull();
  });

  it("a rejected event surfaces the server detail and the next success clears it", async () => {
    const app = await appWithSession();
    await app.ctrl.sendEvent("rating", { value: 35 });
    await flush();
    expect(document.querySelector('[role="alert"]')!.textContent).toBe(
      "rating must be a multiple of 10",
    );

    await app.ctrl.rate(40);
    await flush();
    expect(document.querySelector('[role="alert"]')).toBeNull();
    expect(app.svc.rating).toBe(40);
  });

  it("each action is one event post, and only mutations refetch the grid", async () => {
    const app = await appWithSession();
    await app.ctrl.addObject("Car");
    await app.ctrl.toggleCell("Car", 2);
    app.ctrl.logHover("Car", 2);
    await flush();
    await app.ctrl.rate(30);
    await app.ctrl.recordAndReset("done");
    await flush();

    const kinds = app.svc.requests
      .filter((r) => r.method === "POST" && r.path.endsWith("/events"))
      .map((r) => r.body!.kind);
    expect(kinds).toEqual(["add_object", "toggle", "hover", "rating"]);

    // grid fetches: session create + each of the three mutations; none for hover
    const gridGets = app.svc.requests.filter((r) => r.path.endsWith("/grid"));
    expect(gridGets).toHaveLength(4);
  });
});
