/** Typed client for the annotation API under /api/v1. */

export interface CodebookSub {
  name: string;
  memo: string;
}

export interface CodebookNode {
  name: string;
  memo: string;
  subs?: CodebookSub[];
}

export interface Codebook {
  version: string;
  nodes: CodebookNode[];
  keywords: Record<string, string[]>;
}

export interface PlatformInfo {
  id: string;
  display_name: string;
  tranco_rank: number | null;
  location_meta: Record<string, boolean> | null;
}

export interface PageSummary {
  page: string;
  url: string;
  platform: string;
  topic: string;
  passage_count: number;
}

export interface Passage {
  index: number;
  keywords: string[];
  span: [number, number];
  text: string;
}

export interface PageDetail {
  page: string;
  url: string;
  platform: string;
  topic: string;
  fetched_at: string;
  passages: Passage[];
}

export type SegmentStatus =
  | "primary"
  | "flagged"
  | "resolved"
  | "excluded_duplicate";

export interface Segment {
  id: string;
  platform_id: string;
  topic: string;
  passage_ref: [string, number];
  char_span: [number, number];
  code: string;
  coder: string;
  created_at: string;
  status: SegmentStatus;
  note: string | null;
  version: number;
}

export interface NewSegment {
  platform_id: string;
  topic: string;
  passage_ref: [string, number];
  char_span: [number, number];
  code: string;
  coder: string;
  created_at?: string;
  note?: string | null;
}

export type ReviewActionName =
  | "flag"
  | "resolve"
  | "exclude_duplicate"
  | "reinstate";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function asError(resp: Response): Promise<ApiError> {
  let code = "UnknownError";
  let message = resp.statusText;
  try {
    const body = (await resp.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(resp.status, code, message);
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(`${this.baseUrl}/api/v1${path}`, init);
    if (!resp.ok) throw await asError(resp);
    return (await resp.json()) as T;
  }

  codebook(): Promise<Codebook> {
    return this.request<Codebook>("/codebook");
  }

  platforms(): Promise<PlatformInfo[]> {
    return this.request<PlatformInfo[]>("/platforms");
  }

  pages(filter: { platform?: string; topic?: string } = {}): Promise<PageSummary[]> {
    const params = new URLSearchParams();
    if (filter.platform) params.set("platform", filter.platform);
    if (filter.topic) params.set("topic", filter.topic);
    const qs = params.toString();
    return this.request<{ pages: PageSummary[] }>(
      `/passages${qs ? `?${qs}` : ""}`,
    ).then((r) => r.pages);
  }

  page(page: string): Promise<PageDetail> {
    return this.request<PageDetail>(
      `/passages?page=${encodeURIComponent(page)}`,
    );
  }

  segments(filter: {
    status?: SegmentStatus;
    coder?: string;
    platform?: string;
    topic?: string;
  } = {}): Promise<Segment[]> {
    const params = new URLSearchParams();
    for (const [k, v] of Object.entries(filter)) {
      if (v) params.set(k, v);
    }
    const qs = params.toString();
    return this.request<Segment[]>(`/segments${qs ? `?${qs}` : ""}`);
  }

  createSegment(seg: NewSegment): Promise<Segment> {
    return this.request<Segment>("/segments", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(seg),
    });
  }

  updateSegment(
    id: string,
    patch: Partial<NewSegment> & { version: number },
  ): Promise<Segment> {
    return this.request<Segment>(`/segments/${encodeURIComponent(id)}`, {
      method: "PATCH",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(patch),
    });
  }

  review(
    id: string,
    action: ReviewActionName,
    reviewer: string,
    note?: string,
  ): Promise<Segment> {
    return this.request<Segment>(
      `/segments/${encodeURIComponent(id)}/review`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ action, reviewer, note: note ?? null }),
      },
    );
  }

  async exportNdjson(): Promise<string> {
    const resp = await fetch(`${this.baseUrl}/api/v1/export.ndjson`);
    if (!resp.ok) throw await asError(resp);
    return resp.text();
  }
}
