/** Browser entry point: wires the API client and session logic to the DOM. */

import { ApiClient, PageDetail, Segment } from "./api.js";
import { byCategory } from "./codebook.js";
import { availableActions, buildSegment, normalizeSelection, reviewOrder } from "./session.js";

const api = new ApiClient("");

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  props: Partial<HTMLElementTagNameMap[K]> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = Object.assign(document.createElement(tag), props);
  node.append(...children);
  return node;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

interface UiState {
  platform: string;
  page: PageDetail | null;
  passageIndex: number;
  span: [number, number] | null;
}

const state: UiState = { platform: "", page: null, passageIndex: 0, span: null };

function coder(): string {
  return byId<HTMLInputElement>("coder").value;
}

async function loadPlatforms(): Promise<void> {
  const select = byId<HTMLSelectElement>("platform");
  const platforms = await api.platforms();
  select.replaceChildren(
    ...platforms.map((p) =>
      el("option", { value: p.id, textContent: p.display_name }),
    ),
  );
  if (platforms.length > 0) {
    state.platform = platforms[0].id;
    await loadPages();
  }
}

async function loadCodebook(): Promise<void> {
  const select = byId<HTMLSelectElement>("code");
  const book = await api.codebook();
  const groups: Node[] = [];
  for (const [category, group] of byCategory(book)) {
    const optgroup = el("optgroup", { label: category });
    for (const leaf of group) {
      optgroup.append(
        el("option", { value: leaf.path, textContent: leaf.path, title: leaf.memo }),
      );
    }
    groups.push(optgroup);
  }
  select.replaceChildren(...groups);
}

async function loadPages(): Promise<void> {
  const list = byId<HTMLUListElement>("pages");
  const pages = await api.pages({ platform: state.platform });
  list.replaceChildren(
    ...pages.map((p) =>
      el(
        "li",
        {},
        el("a", {
          href: "#",
          textContent: `${p.topic}: ${p.url} (${p.passage_count})`,
          onclick: (ev: Event) => {
            ev.preventDefault();
            void openPage(p.page);
          },
        }),
      ),
    ),
  );
}

async function openPage(page: string): Promise<void> {
  state.page = await api.page(page);
  state.passageIndex = 0;
  state.span = null;
  const container = byId<HTMLDivElement>("passages");
  container.replaceChildren(
    ...state.page.passages.map((p) =>
      el(
        "article",
        { className: "passage" },
        el("header", {}, `#${p.index} [${p.keywords.join(", ")}]`),
        el("p", {
          textContent: p.text,
          onmouseup: () => captureSelection(p.index),
        }),
      ),
    ),
  );
}

function captureSelection(passageIndex: number): void {
  const sel = window.getSelection();
  if (!sel || sel.rangeCount === 0 || !state.page) return;
  const range = sel.getRangeAt(0);
  const text = state.page.passages[passageIndex].text;
  const span = normalizeSelection(range.startOffset, range.endOffset, text.length);
  if (!span) return;
  state.passageIndex = passageIndex;
  state.span = span;
  byId<HTMLSpanElement>("selection").textContent =
    `passage ${passageIndex}, chars ${span[0]}–${span[1]}`;
}

async function annotate(): Promise<void> {
  const status = byId<HTMLSpanElement>("status");
  if (!state.page || !state.span) {
    status.textContent = "select a span first";
    return;
  }
  const draft = buildSegment({
    platform: state.page.platform,
    topic: state.page.topic,
    selection: {
      page: state.page.page,
      passageIndex: state.passageIndex,
      start: state.span[0],
      end: state.span[1],
    },
    code: byId<HTMLSelectElement>("code").value,
    coder: coder(),
  });
  if (!draft.ok) {
    status.textContent = draft.error;
    return;
  }
  try {
    const seg = await api.createSegment(draft.segment);
    status.textContent = `saved ${seg.id} (v${seg.version})`;
    await refreshSegments();
  } catch (err) {
    status.textContent = String(err);
  }
}

function actionButtons(seg: Segment): Node[] {
  return availableActions(seg, coder()).map((action) =>
    el("button", {
      textContent: action,
      onclick: async () => {
        try {
          await api.review(seg.id, action, coder());
        } catch (err) {
          byId<HTMLSpanElement>("status").textContent = String(err);
        }
        await refreshSegments();
      },
    }),
  );
}

async function refreshSegments(): Promise<void> {
  const tbody = byId<HTMLTableSectionElement>("segments");
  const segments = reviewOrder(await api.segments());
  tbody.replaceChildren(
    ...segments.map((s) =>
      el(
        "tr",
        { className: s.status },
        el("td", { textContent: s.code }),
        el("td", { textContent: `${s.passage_ref[0]}[${s.passage_ref[1]}]` }),
        el("td", { textContent: `${s.char_span[0]}–${s.char_span[1]}` }),
        el("td", { textContent: s.coder }),
        el("td", { textContent: s.status }),
        el("td", {}, ...actionButtons(s)),
      ),
    ),
  );
}

async function main(): Promise<void> {
  byId<HTMLSelectElement>("platform").onchange = (ev) => {
    state.platform = (ev.target as HTMLSelectElement).value;
    void loadPages();
  };
  byId<HTMLButtonElement>("annotate").onclick = () => void annotate();
  byId<HTMLAnchorElement>("export").href = "/api/v1/export.ndjson";
  await Promise.all([loadPlatforms(), loadCodebook(), refreshSegments()]);
}

document.addEventListener("DOMContentLoaded", () => void main());
