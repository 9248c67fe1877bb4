/** Integration round trip against the real annotation API: a first coder
 * annotates, a second coder flags, the flag is resolved, one segment is
 * excluded as a duplicate, and the export matches a golden sequence. */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { isLeaf } from "../src/codebook.js";

const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const T0 = "2026-02-01T00:00:00Z";

let server: ChildProcess;
let workdir: string;

async function waitForReady(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/api/v1/codebook`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("annotation API did not come up");
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "polimod-ui-"));
  const script = [
    "import sys, uvicorn",
    "from polimod.api import create_app",
    "app = create_app(sys.argv[1])",
    "uvicorn.run(app, host='127.0.0.1', port=int(sys.argv[2]), log_level='warning')",
  ].join("\n");
  server = spawn(
    "python3",
    ["-c", script, join(workdir, "store.ndjson"), String(PORT)],
    { stdio: "inherit" },
  );
  await waitForReady();
}, 30000);

afterAll(() => {
  server?.kill();
  rmSync(workdir, { recursive: true, force: true });
});

describe("annotation round trip over HTTP", () => {
  const api = new ApiClient(BASE);

  it("runs annotate -> flag -> resolve -> exclude and exports the golden sequence", async () => {
    const book = await api.codebook();
    expect(isLeaf(book, "POLICY JUSTIFICATION/Legal")).toBe(true);

    // first coder annotates two spans
    const first = await api.createSegment({
      platform_id: "example",
      topic: "CopyrightInfringement",
      passage_ref: ["example/copyright_infringement/rules.txt", 0],
      char_span: [0, 24],
      code: "POLICY JUSTIFICATION/Legal",
      coder: "alice",
      created_at: T0,
    });
    expect(first.version).toBe(1);
    const second = await api.createSegment({
      platform_id: "example",
      topic: "CopyrightInfringement",
      passage_ref: ["example/copyright_infringement/rules.txt", 0],
      char_span: [2, 26],
      code: "POLICY JUSTIFICATION/Legal",
      coder: "alice",
      created_at: T0,
    });

    // the first coder cannot flag their own segment...
    await expect(api.review(second.id, "flag", "alice")).rejects.toMatchObject(
      { status: 422, code: "SelfReview" },
    );
    // ...but a second coder can
    const flagged = await api.review(second.id, "flag", "bob", "duplicate?");
    expect(flagged.status).toBe("flagged");

    const resolved = await api.review(second.id, "resolve", "alice");
    expect(resolved.status).toBe("resolved");
    const excluded = await api.review(second.id, "exclude_duplicate", "bob");
    expect(excluded.status).toBe("excluded_duplicate");
    expect(excluded.version).toBe(4);

    // stale-version edits are rejected with 409
    await expect(
      api.updateSegment(first.id, { code: "SIGNPOST", version: 99 }),
    ).rejects.toMatchObject({ status: 409, code: "VersionConflict" });
    const patched = await api.updateSegment(first.id, {
      code: "REDRESS / APPEAL",
      version: 1,
    });
    expect(patched.version).toBe(2);

    // the export matches the golden sequence once ids are canonicalized
    const exported = await api.exportNdjson();
    const ids = [first.id, second.id];
    const canonical = exported
      .replaceAll(ids[0], "<seg-1>")
      .replaceAll(ids[1], "<seg-2>");
    const golden =
      `{"id": "<seg-1>", "platform_id": "example", "topic": "CopyrightInfringement", ` +
      `"passage_ref": ["example/copyright_infringement/rules.txt", 0], "char_span": [0, 24], ` +
      `"code": "REDRESS / APPEAL", "coder": "alice", "created_at": "${T0}", ` +
      `"status": "primary", "note": null, "version": 2}\n` +
      `{"id": "<seg-2>", "platform_id": "example", "topic": "CopyrightInfringement", ` +
      `"passage_ref": ["example/copyright_infringement/rules.txt", 0], "char_span": [2, 26], ` +
      `"code": "POLICY JUSTIFICATION/Legal", "coder": "alice", "created_at": "${T0}", ` +
      `"status": "excluded_duplicate", "note": null, "version": 4}\n`;
    expect(canonical).toBe(golden);

    // importing the export into the same store is idempotent
    const resp = await fetch(`${BASE}/api/v1/import`, {
      method: "POST",
      body: exported,
    });
    expect(resp.ok).toBe(true);
    expect(await api.exportNdjson()).toBe(exported);
  }, 20000);

  it("maps validation errors to typed ApiError values", async () => {
    const bad = api.createSegment({
      platform_id: "example",
      topic: "CopyrightInfringement",
      passage_ref: ["f.txt", 0],
      char_span: [0, 5],
      code: "NOT A CODE",
      coder: "alice",
    });
    await expect(bad).rejects.toBeInstanceOf(ApiError);
    await expect(bad).rejects.toMatchObject({
      status: 422,
      code: "InvalidCode",
    });
  });
});
