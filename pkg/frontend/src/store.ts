import type {
  ColorMode,
  DatasetInfo,
  GridPayload,
  ModelInfo,
  SegmentDetail,
  Snapshot,
} from "./types";

// The server session is the single source of truth: `snapshot` and `grid`
// are always verbatim service responses.  The only client-owned pieces of
// state are the setup pickers, the palette, and transient status text.
export interface AppState {
  models: ModelInfo[];
  dataset: DatasetInfo | null;
  pickedModel: string;
  pickedSegment: string;
  segment: SegmentDetail | null;
  snapshot: Snapshot | null;
  grid: GridPayload | null;
  palette: ColorMode;
  busy: boolean;
  error: string;
  notice: string;
}

export function initialState(): AppState {
  return {
    models: [],
    dataset: null,
    pickedModel: "",
    pickedSegment: "",
    segment: null,
    snapshot: null,
    grid: null,
    palette: "default",
    busy: false,
    error: "",
    notice: "",
  };
}

export type Listener = () => void;

export class Store {
  state: AppState = initialState();
  private listeners: Listener[] = [];

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  patch(partial: Partial<AppState>): void {
    Object.assign(this.state, partial);
    for (const fn of this.listeners) fn();
  }
}
