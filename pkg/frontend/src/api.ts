import type {
  DatasetInfo,
  EventKind,
  GridPayload,
  ModelInfo,
  RatingRecord,
  SegmentDetail,
  Snapshot,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

type Fetcher = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client; every method is one HTTP call, no local fallbacks. */
export class Client {
  constructor(
    private readonly base = "",
    private readonly fetcher: Fetcher = (input, init) => fetch(input, init),
  ) {}

  private async go<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    let resp: Response;
    try {
      resp = await this.fetcher(this.base + path, init);
    } catch {
      throw new ApiError(0, "service unreachable");
    }
    if (!resp.ok) {
      let detail = `${resp.status} ${resp.statusText}`;
      try {
        const parsed = (await resp.json()) as { detail?: unknown };
        if (typeof parsed.detail === "string") detail = parsed.detail;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  datasets(): Promise<DatasetInfo[]> {
    return this.go("GET", "/api/datasets");
  }

  models(): Promise<ModelInfo[]> {
    return this.go("GET", "/api/models");
  }

  segment(datasetId: string, segmentId: string): Promise<SegmentDetail> {
    return this.go(
      "GET",
      `/api/datasets/${encodeURIComponent(datasetId)}/segments/${encodeURIComponent(segmentId)}`,
    );
  }

  createSession(req: {
    model_id: string;
    segment_id: string;
    rater_id?: string;
    color_mode?: string;
  }): Promise<Snapshot> {
    return this.go("POST", "/api/sessions", req);
  }

  session(id: string): Promise<Snapshot> {
    return this.go("GET", `/api/sessions/${encodeURIComponent(id)}`);
  }

  postEvent(
    id: string,
    kind: EventKind,
    payload: Record<string, unknown>,
  ): Promise<Snapshot> {
    return this.go("POST", `/api/sessions/${encodeURIComponent(id)}/events`, {
      kind,
      payload,
    });
  }

  grid(id: string): Promise<GridPayload> {
    return this.go("GET", `/api/sessions/${encodeURIComponent(id)}/grid`);
  }

  record(id: string, comment: string | null): Promise<RatingRecord> {
    return this.go("POST", `/api/sessions/${encodeURIComponent(id)}/record`, {
      comment,
    });
  }
}
