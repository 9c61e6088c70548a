import { ApiError, Client } from "./api";
import type { Store } from "./store";
import type { ColorMode, EventKind } from "./types";

/** Snap an arbitrary slider position to the 0–100 scale in steps of 10. */
export function snapRating(value: number): number {
  const snapped = Math.round(value / 10) * 10;
  return Math.min(100, Math.max(0, snapped));
}

export function sessionIdFromHash(hash: string): string | null {
  const match = /^#s=(.+)$/.exec(hash);
  return match ? decodeURIComponent(match[1]!) : null;
}

/**
 * All mutations funnel through here: one user action → one posted event →
 * re-fetch of the authoritative grid.  Nothing is recomputed locally.
 */
export class Controller {
  constructor(
    readonly api: Client,
    readonly store: Store,
  ) {}

  async boot(): Promise<void> {
    try {
      const [models, datasets] = await Promise.all([
        this.api.models(),
        this.api.datasets(),
      ]);
      const dataset = datasets[0] ?? null;
      this.store.patch({
        models,
        dataset,
        pickedModel: models[0]?.model_id ?? "",
        pickedSegment: dataset?.segments[0] ?? "",
        error: "",
      });
      const resumeId = sessionIdFromHash(window.location.hash);
      if (resumeId) {
        await this.resumeSession(resumeId);
      } else {
        await this.loadSegment();
      }
    } catch (err) {
      this.fail(err);
    }
  }

  /**
   * A page reload lands back on the same session: the id rides in the URL
   * hash and the server log rebuilds the view verbatim.
   */
  async resumeSession(sessionId: string): Promise<void> {
    try {
      const snapshot = await this.api.session(sessionId);
      const grid = await this.api.grid(sessionId);
      this.store.patch({
        pickedModel: snapshot.model_id,
        pickedSegment: snapshot.segment_id,
        palette: snapshot.color_mode === "colorblind" ? "colorblind" : "default",
        snapshot,
        grid,
        error: "",
      });
      await this.loadSegment();
    } catch (err) {
      window.location.hash = "";
      await this.loadSegment();
      this.fail(err);
    }
  }

  async loadSegment(): Promise<void> {
    const { dataset, pickedSegment } = this.store.state;
    if (!dataset || !pickedSegment) return;
    try {
      const segment = await this.api.segment(dataset.dataset_id, pickedSegment);
      this.store.patch({ segment, error: "" });
    } catch (err) {
      this.fail(err);
    }
  }

  async startSession(raterId: string): Promise<void> {
    const { pickedModel, pickedSegment, palette } = this.store.state;
    if (!pickedModel || !pickedSegment) return;
    this.store.patch({ busy: true });
    try {
      const snapshot = await this.api.createSession({
        model_id: pickedModel,
        segment_id: pickedSegment,
        rater_id: raterId || "anonymous",
        color_mode: palette,
      });
      const grid = await this.api.grid(snapshot.session_id);
      window.location.hash = `s=${snapshot.session_id}`;
      this.store.patch({ snapshot, grid, error: "", notice: "", busy: false });
    } catch (err) {
      this.store.patch({ busy: false });
      this.fail(err);
    }
  }

  /** Post one session event, then refresh snapshot+grid from the server. */
  async sendEvent(kind: EventKind, payload: Record<string, unknown>): Promise<void> {
    const { snapshot, busy } = this.store.state;
    if (!snapshot || busy) return;
    this.store.patch({ busy: true });
    try {
      const next = await this.api.postEvent(snapshot.session_id, kind, payload);
      const grid = await this.api.grid(snapshot.session_id);
      this.store.patch({ snapshot: next, grid, error: "", busy: false });
    } catch (err) {
      this.store.patch({ busy: false });
      this.fail(err);
    }
  }

  addObject(rawName: string): Promise<void> {
    return this.sendEvent("add_object", { raw_name: rawName });
  }

  removeObject(name: string): Promise<void> {
    return this.sendEvent("remove_object", { name });
  }

  async clearObjects(): Promise<void> {
    // no bulk event exists; the log stays one action per entry
    const snapshot = this.store.state.snapshot;
    if (!snapshot) return;
    for (const obj of [...snapshot.selected_objects]) {
      await this.removeObject(obj.name);
    }
  }

  toggleCell(object: string, frame: number): Promise<void> {
    return this.sendEvent("toggle", { object, frame });
  }

  setFrameIncluded(frame: number, included: boolean): Promise<void> {
    return this.sendEvent("frame_included", { frame, included });
  }

  rate(rawValue: number): Promise<void> {
    return this.sendEvent("rating", { value: snapRating(rawValue) });
  }

  /**
   * Fire-and-forget telemetry.  The response is ignored on purpose: a
   * store patch would re-render the panels and wipe the hover highlight
   * while the pointer is still on the cell.
   */
  logHover(object: string, frame: number): void {
    const snapshot = this.store.state.snapshot;
    if (!snapshot || snapshot.status !== "active") return;
    void this.api
      .postEvent(snapshot.session_id, "hover", { object, frame })
      .catch(() => undefined);
  }

  logZoom(frame: number): void {
    const snapshot = this.store.state.snapshot;
    if (!snapshot || snapshot.status !== "active") return;
    void this.api
      .postEvent(snapshot.session_id, "zoom", { frame })
      .catch(() => undefined);
  }

  async recordAndReset(comment: string): Promise<void> {
    const snapshot = this.store.state.snapshot;
    if (!snapshot) return;
    this.store.patch({ busy: true });
    try {
      await this.api.record(snapshot.session_id, comment.trim() || null);
      // back to the setup view, ready for the next assessment
      window.location.hash = "";
      this.store.patch({
        snapshot: null,
        grid: null,
        busy: false,
        error: "",
        notice: "Response recorded.",
      });
    } catch (err) {
      this.store.patch({ busy: false });
      this.fail(err);
    }
  }

  setPalette(mode: ColorMode): void {
    // purely visual: swaps the CSS palette, leaves session content untouched
    this.store.patch({ palette: mode });
  }

  private fail(err: unknown): void {
    const message =
      err instanceof ApiError ? err.message : "unexpected error, see console";
    if (!(err instanceof ApiError)) console.error(err);
    this.store.patch({ error: message, notice: "" });
  }
}
