// Shapes mirror the service's JSON bodies one-to-one; nothing here is
// computed client-side.

export interface ModelInfo {
  model_id: string;
  kind: string;
  seed: number;
  flip_probability: number;
  cache_ref: string;
}

export interface DatasetInfo {
  dataset_id: string;
  n_objects: number;
  n_segments: number;
  vocabulary: string[];
  segments: string[];
}

export interface KeyframeInfo {
  index: number;
  image_ref: string;
}

export interface SegmentDetail {
  segment_id: string;
  video_id: string;
  n_frames: number;
  frames: KeyframeInfo[];
}

export interface SelectedObject {
  name: string;
  is_spy: boolean;
}

export interface RatingRecord {
  rater_id: string;
  model_id: string;
  segment_id: string;
  rating: number;
  f1_star: number;
  completion_seconds: number | null;
}

export interface Snapshot {
  session_id: string;
  model_id: string;
  segment_id: string;
  rater_id: string;
  color_mode: string;
  created_ts: string;
  selected_objects: SelectedObject[];
  included_frames: number[];
  toggles: [string, number][];
  rating: number | null;
  comment: string | null;
  status: string;
  record: RatingRecord | null;
  seq: number;
}

export interface GridRow {
  object: string;
  is_spy: boolean;
  shown: boolean[];
  toggled: boolean[];
}

export interface GridView {
  objects: SelectedObject[];
  frames: number[];
  rows: GridRow[];
  color_mode: string;
}

export interface ModificationSummary {
  counts: Record<string, number>;
  total: number;
}

export interface GridPayload {
  session_id: string;
  grid: GridView;
  patterns: unknown; // computed and consumed server-side; never rendered here
  modification_summary: ModificationSummary;
}

export type ColorMode = "default" | "colorblind";

export type EventKind =
  | "add_object"
  | "remove_object"
  | "toggle"
  | "frame_included"
  | "rating"
  | "hover"
  | "zoom";
