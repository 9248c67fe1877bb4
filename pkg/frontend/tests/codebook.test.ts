import { describe, expect, it } from "vitest";

import type { Codebook } from "../src/api.js";
import { byCategory, isLeaf, leaves, splitPath } from "../src/codebook.js";

const BOOK: Codebook = {
  version: "1.0",
  nodes: [
    {
      name: "POLICY JUSTIFICATION",
      memo: "Why content is moderated.",
      subs: [
        { name: "Community, Trust, & Safety", memo: "community values" },
        { name: "Legal", memo: "legal frameworks" },
      ],
    },
    {
      name: "MODERATION CRITERIA",
      memo: "What is moderated.",
      subs: [
        { name: "Definition", memo: "definitions" },
        { name: "Example", memo: "examples" },
      ],
    },
    { name: "REDRESS / APPEAL", memo: "appeals" },
    { name: "SIGNPOST", memo: "cross references" },
  ],
  keywords: { CopyrightInfringement: ["copyright", "dmca"] },
};

describe("leaves", () => {
  it("flattens sub-codes and keeps top-level leaves", () => {
    expect(leaves(BOOK).map((l) => l.path)).toEqual([
      "POLICY JUSTIFICATION/Community, Trust, & Safety",
      "POLICY JUSTIFICATION/Legal",
      "MODERATION CRITERIA/Definition",
      "MODERATION CRITERIA/Example",
      "REDRESS / APPEAL",
      "SIGNPOST",
    ]);
  });

  it("categories never appear as leaves", () => {
    expect(isLeaf(BOOK, "POLICY JUSTIFICATION")).toBe(false);
    expect(isLeaf(BOOK, "POLICY JUSTIFICATION/Legal")).toBe(true);
    expect(isLeaf(BOOK, "SIGNPOST")).toBe(true);
    expect(isLeaf(BOOK, "NO SUCH/THING")).toBe(false);
  });
});

describe("splitPath", () => {
  it("splits category/sub paths", () => {
    expect(splitPath(BOOK, "MODERATION CRITERIA/Example")).toEqual([
      "MODERATION CRITERIA",
      "Example",
    ]);
  });

  it("handles top-level names that contain a slash", () => {
    expect(splitPath(BOOK, "REDRESS / APPEAL")).toEqual([
      "REDRESS / APPEAL",
      null,
    ]);
  });

  it("returns null for unknown categories", () => {
    expect(splitPath(BOOK, "GHOST/Whatever")).toBeNull();
  });
});

describe("byCategory", () => {
  it("groups in document order", () => {
    const groups = byCategory(BOOK);
    expect([...groups.keys()]).toEqual([
      "POLICY JUSTIFICATION",
      "MODERATION CRITERIA",
      "REDRESS / APPEAL",
      "SIGNPOST",
    ]);
    expect(groups.get("REDRESS / APPEAL")!.map((l) => l.path)).toEqual([
      "REDRESS / APPEAL",
    ]);
  });
});
