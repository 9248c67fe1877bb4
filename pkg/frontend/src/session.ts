/** Pure annotation-session logic: span selection, payload construction, and
 * which review actions a given user may take on a segment. Kept free of DOM
 * and network so it can be unit-tested directly. */

import type {
  NewSegment,
  ReviewActionName,
  Segment,
  SegmentStatus,
} from "./api.js";

export interface Selection {
  page: string;
  passageIndex: number;
  start: number;
  end: number;
}

/** Clamp a raw text selection to a valid half-open span, or null. */
export function normalizeSelection(
  start: number,
  end: number,
  textLength: number,
): [number, number] | null {
  const lo = Math.max(0, Math.min(start, end));
  const hi = Math.min(textLength, Math.max(start, end));
  if (lo >= hi) return null;
  return [lo, hi];
}

export interface DraftInput {
  platform: string;
  topic: string;
  selection: Selection;
  code: string;
  coder: string;
  note?: string;
}

export type DraftResult =
  | { ok: true; segment: NewSegment }
  | { ok: false; error: string };

/** Validate a draft annotation and turn it into a POST payload. */
export function buildSegment(input: DraftInput): DraftResult {
  if (!input.coder.trim()) return { ok: false, error: "coder name required" };
  if (!input.code) return { ok: false, error: "pick a code" };
  const { selection } = input;
  if (selection.start >= selection.end) {
    return { ok: false, error: "select a non-empty span" };
  }
  return {
    ok: true,
    segment: {
      platform_id: input.platform,
      topic: input.topic,
      passage_ref: [selection.page, selection.passageIndex],
      char_span: [selection.start, selection.end],
      code: input.code,
      coder: input.coder.trim(),
      note: input.note?.trim() || null,
    },
  };
}

const TRANSITIONS: Record<ReviewActionName, SegmentStatus[]> = {
  flag: ["primary"],
  resolve: ["flagged"],
  exclude_duplicate: ["primary", "flagged", "resolved"],
  reinstate: ["excluded_duplicate"],
};

/** Review actions `user` may take on `segment` (self-flagging is blocked). */
export function availableActions(
  segment: Pick<Segment, "status" | "coder">,
  user: string,
): ReviewActionName[] {
  const out: ReviewActionName[] = [];
  for (const [action, from] of Object.entries(TRANSITIONS) as [
    ReviewActionName,
    SegmentStatus[],
  ][]) {
    if (!from.includes(segment.status)) continue;
    if (action === "flag" && user === segment.coder) continue;
    out.push(action);
  }
  return out;
}

/** Order segments the way the review queue shows them. */
export function reviewOrder(segments: Segment[]): Segment[] {
  const rank: Record<SegmentStatus, number> = {
    flagged: 0,
    primary: 1,
    resolved: 2,
    excluded_duplicate: 3,
  };
  return [...segments].sort(
    (a, b) =>
      rank[a.status] - rank[b.status] ||
      a.created_at.localeCompare(b.created_at) ||
      a.id.localeCompare(b.id),
  );
}
