// A miniature in-memory stand-in for the python service.  It applies the
// same session rules (spies, caps, toggle drops, freeze-on-record) so the
// UI can be exercised against realistic snapshot/grid payloads, and it
// records every request for the contract assertions.

import { Client } from "../src/api";
import { buildApp } from "../src/main";
import type { Controller } from "../src/controller";
import type { GridPayload, SelectedObject, Snapshot } from "../src/types";

export interface SeenRequest {
  method: string;
  path: string;
  body: Record<string, unknown> | null;
}

const OBJECT_CAP = 16;

function json(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function bad(detail: string, status = 400): Response {
  return json({ detail }, status);
}

export class FakeService {
  requests: SeenRequest[] = [];

  vocabulary: string[];
  nFrames = 5;
  base: Record<string, boolean[]>;

  // session state (single session is plenty for the UI tests)
  sessionId: string | null = null;
  selected: SelectedObject[] = [];
  toggles = new Set<string>(); // "name|frame"
  includedFrames = new Set<number>();
  rating: number | null = null;
  comment: string | null = null;
  status = "new";
  seq = 0;
  colorMode = "default";
  raterId = "anonymous";

  constructor(vocabulary?: string[]) {
    this.vocabulary = vocabulary ?? [
      "Car",
      "Tree",
      "Dog",
      "Chair",
      "Crosswalk",
      "Bench",
    ];
    this.base = {};
    this.vocabulary.forEach((name, i) => {
      // deterministic stripy rows, distinct per object
      this.base[name] = Array.from(
        { length: this.nFrames },
        (_, f) => (f + i) % 3 !== 0,
      );
    });
  }

  fetcher = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const body = init?.body
      ? (JSON.parse(init.body as string) as Record<string, unknown>)
      : null;
    this.requests.push({ method, path: input, body });
    return this.route(method, input, body);
  };

  eventsOfKind(kind: string): SeenRequest[] {
    return this.requests.filter(
      (r) =>
        r.method === "POST" &&
        r.path.endsWith("/events") &&
        (r.body?.kind as string) === kind,
    );
  }

  private route(
    method: string,
    path: string,
    body: Record<string, unknown> | null,
  ): Response {
    if (method === "GET" && path === "/api/datasets") {
      return json([
        {
          dataset_id: "demo",
          n_objects: this.vocabulary.length,
          n_segments: 1,
          vocabulary: this.vocabulary,
          segments: ["seg-1"],
        },
      ]);
    }
    if (method === "GET" && path === "/api/models") {
      return json([
        { model_id: "m-one", kind: "cached", seed: 0, flip_probability: 0, cache_ref: "caches/m-one" },
        { model_id: "m-two", kind: "random", seed: 5, flip_probability: 0, cache_ref: "" },
      ]);
    }
    if (method === "GET" && path === "/api/datasets/demo/segments/seg-1") {
      return json({
        segment_id: "seg-1",
        video_id: "vid-01",
        n_frames: this.nFrames,
        frames: Array.from({ length: this.nFrames }, (_, i) => ({
          index: i,
          image_ref: `frames/seg-1/${i}.jpg`,
        })),
      });
    }
    if (method === "POST" && path === "/api/sessions") {
      this.sessionId = "fake-1";
      this.selected = [];
      this.toggles.clear();
      this.includedFrames = new Set(
        Array.from({ length: this.nFrames }, (_, i) => i),
      );
      this.rating = null;
      this.comment = null;
      this.status = "active";
      this.seq = 1;
      this.colorMode = (body?.color_mode as string) ?? "default";
      this.raterId = (body?.rater_id as string) ?? "anonymous";
      return json(this.snapshot(), 201);
    }
    if (this.sessionId && path === `/api/sessions/${this.sessionId}`) {
      return json(this.snapshot());
    }
    if (this.sessionId && path === `/api/sessions/${this.sessionId}/grid`) {
      return json(this.gridPayload());
    }
    if (
      method === "POST" &&
      this.sessionId &&
      path === `/api/sessions/${this.sessionId}/events`
    ) {
      return this.applyEvent(
        body?.kind as string,
        (body?.payload ?? {}) as Record<string, unknown>,
      );
    }
    if (
      method === "POST" &&
      this.sessionId &&
      path === `/api/sessions/${this.sessionId}/record`
    ) {
      if (this.rating === null) return bad("record before a rating");
      this.status = "recorded";
      this.comment = (body?.comment as string | null) ?? null;
      return json({
        rater_id: this.raterId,
        model_id: "m-one",
        segment_id: "seg-1",
        rating: this.rating,
        f1_star: 0.5,
        completion_seconds: 1.0,
      });
    }
    return bad(`unknown route ${method} ${path}`, 404);
  }

  private applyEvent(
    kind: string,
    payload: Record<string, unknown>,
  ): Response {
    if (this.status === "recorded") return bad("session frozen (already recorded)");
    switch (kind) {
      case "add_object": {
        const raw = (payload.raw_name as string) ?? "";
        const isSpy = raw.startsWith("*");
        const name = (isSpy ? raw.slice(1) : raw).trim();
        if (!name) return bad("empty object name");
        if (this.selected.some((o) => o.name === name))
          return bad(`object ${name} already selected`);
        if (this.selected.length >= OBJECT_CAP) return bad("object cap exceeded");
        if (!isSpy && !this.vocabulary.includes(name))
          return bad(`object ${name} is not in the vocabulary`);
        this.selected.push({ name, is_spy: isSpy });
        break;
      }
      case "remove_object": {
        const name = payload.name as string;
        this.selected = this.selected.filter((o) => o.name !== name);
        for (const key of [...this.toggles]) {
          if (key.startsWith(`${name}|`)) this.toggles.delete(key);
        }
        break;
      }
      case "toggle": {
        const key = `${payload.object as string}|${payload.frame as number}`;
        if (this.toggles.has(key)) this.toggles.delete(key);
        else this.toggles.add(key);
        break;
      }
      case "frame_included": {
        const frame = payload.frame as number;
        if (payload.included) {
          this.includedFrames.add(frame);
        } else {
          if (this.includedFrames.size === 1)
            return bad("cannot exclude the last included frame");
          this.includedFrames.delete(frame);
          for (const key of [...this.toggles]) {
            if (key.endsWith(`|${frame}`)) this.toggles.delete(key);
          }
        }
        break;
      }
      case "rating": {
        const value = payload.value as number;
        if (value % 10 !== 0) return bad("rating must be a multiple of 10");
        this.rating = value;
        break;
      }
      case "hover":
      case "zoom":
        break; // telemetry only
      default:
        return bad(`unknown event kind ${kind}`);
    }
    this.seq += 1;
    return json(this.snapshot());
  }

  snapshot(): Snapshot {
    return {
      session_id: this.sessionId ?? "",
      model_id: "m-one",
      segment_id: "seg-1",
      rater_id: this.raterId,
      color_mode: this.colorMode,
      created_ts: "2026-01-01T00:00:00+00:00",
      selected_objects: [...this.selected],
      included_frames: [...this.includedFrames].sort((a, b) => a - b),
      toggles: [...this.toggles]
        .map((key): [string, number] => {
          const [name, frame] = key.split("|");
          return [name!, Number(frame)];
        })
        .sort(),
      rating: this.rating,
      comment: this.comment,
      status: this.status,
      record: null,
      seq: this.seq,
    };
  }

  gridPayload(): GridPayload {
    const frames = [...this.includedFrames].sort((a, b) => a - b);
    const ordered = [
      ...this.selected.filter((o) => !o.is_spy),
      ...this.selected.filter((o) => o.is_spy),
    ];
    const rows = ordered.map((obj) => {
      const raw = obj.is_spy
        ? Array.from({ length: this.nFrames }, () => false)
        : (this.base[obj.name] ?? Array.from({ length: this.nFrames }, () => false));
      const toggled = frames.map((f) => this.toggles.has(`${obj.name}|${f}`));
      return {
        object: obj.name,
        is_spy: obj.is_spy,
        shown: frames.map((f, i) => raw[f]! !== toggled[i]!),
        toggled,
      };
    });
    const counts: Record<string, number> = {};
    for (const f of frames) counts[String(f)] = 0;
    for (const key of this.toggles) {
      const frame = key.split("|")[1]!;
      if (frame in counts) counts[frame] = (counts[frame] ?? 0) + 1;
    }
    return {
      session_id: this.sessionId ?? "",
      grid: {
        objects: ordered,
        frames,
        rows,
        color_mode: this.colorMode,
      },
      patterns: {},
      modification_summary: {
        counts,
        total: this.toggles.size,
      },
    };
  }
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}

export interface TestApp {
  svc: FakeService;
  root: HTMLElement;
  ctrl: Controller;
}

export async function freshApp(svc = new FakeService()): Promise<TestApp> {
  window.location.hash = "";
  document.body.innerHTML = '<div id="root"></div>';
  const root = document.getElementById("root") as HTMLElement;
  const ctrl = buildApp(root, new Client("", svc.fetcher));
  await ctrl.boot();
  await flush();
  return { svc, root, ctrl };
}

export async function appWithSession(svc = new FakeService()): Promise<TestApp> {
  const app = await freshApp(svc);
  await app.ctrl.startSession("tester");
  await flush();
  return app;
}
