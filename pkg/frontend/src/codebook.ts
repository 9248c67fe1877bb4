/** Helpers over the codebook document: leaf enumeration and path handling. */

import type { Codebook, CodebookNode } from "./api.js";

export interface Leaf {
  /** Full assignable path, e.g. "POLICY JUSTIFICATION/Legal". */
  path: string;
  /** Top-level category name (equals `path` for top-level leaves). */
  category: string;
  memo: string;
}

/** Every assignable leaf, in document order. */
export function leaves(book: Codebook): Leaf[] {
  const out: Leaf[] = [];
  for (const node of book.nodes) {
    if (node.subs && node.subs.length > 0) {
      for (const sub of node.subs) {
        out.push({
          path: `${node.name}/${sub.name}`,
          category: node.name,
          memo: sub.memo,
        });
      }
    } else {
      out.push({ path: node.name, category: node.name, memo: node.memo });
    }
  }
  return out;
}

/**
 * Split a code path into [category, sub|null]. Top-level names may contain
 * "/" themselves, so match the longest known category prefix first.
 */
export function splitPath(
  book: Codebook,
  path: string,
): [string, string | null] | null {
  const names = book.nodes
    .map((n: CodebookNode) => n.name)
    .sort((a, b) => b.length - a.length);
  for (const name of names) {
    if (path === name) return [name, null];
    if (path.startsWith(`${name}/`)) {
      return [name, path.slice(name.length + 1)];
    }
  }
  return null;
}

/** Whether `path` names an assignable leaf of the codebook. */
export function isLeaf(book: Codebook, path: string): boolean {
  return leaves(book).some((l) => l.path === path);
}

/** Leaves grouped by top-level category, preserving document order. */
export function byCategory(book: Codebook): Map<string, Leaf[]> {
  const groups = new Map<string, Leaf[]>();
  for (const leaf of leaves(book)) {
    const group = groups.get(leaf.category) ?? [];
    group.push(leaf);
    groups.set(leaf.category, group);
  }
  return groups;
}
