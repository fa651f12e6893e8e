/** DOM construction for the two screens.
 *
 * The UI never computes weights or scores itself: everything shown comes
 * verbatim from the last AnalyzeResponse.  Chip color is a pure function of
 * the in_headline flag, chip size a pure monotone function of the weight.
 */

import type { KeywordEntry, UiState } from "./types.js";

export const CHIP_MIN_PX = 14;
export const CHIP_MAX_PX = 30;

export function chipColor(inHeadline: boolean): "green" | "red" {
  return inHeadline ? "green" : "red";
}

/** Linear size between the smallest and largest weight on screen; uniform
 * when all weights are equal. */
export function chipFontSize(
  weight: number,
  minWeight: number,
  maxWeight: number,
  minPx: number = CHIP_MIN_PX,
  maxPx: number = CHIP_MAX_PX,
): number {
  if (maxWeight <= minWeight) {
    return (minPx + maxPx) / 2;
  }
  const t = (weight - minWeight) / (maxWeight - minWeight);
  return minPx + t * (maxPx - minPx);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface InputHandlers {
  onDraftChange(field: "headline" | "subheadline" | "body", value: string): void;
  onAnalyze(): void;
  onFeedSelect(id: string): void;
}

export function renderInputMode(state: UiState, handlers: InputHandlers): HTMLElement {
  const root = el("div", "screen input-mode");

  const pane = el("div", "input-pane");
  pane.appendChild(el("h2", undefined, "Article"));
  const headline = textArea("headline", "Headline", state.draft.headline, 2);
  const subheadline = textArea("subheadline", "Subheadline", state.draft.subheadline, 2);
  const body = textArea("body", "Body", state.draft.body, 14);
  pane.append(headline.wrapper, subheadline.wrapper, body.wrapper);

  const analyze = el("button", "analyze-button", "Analyze");
  analyze.id = "analyze";
  analyze.disabled = state.draft.body.trim() === "";
  analyze.addEventListener("click", () => handlers.onAnalyze());
  pane.appendChild(analyze);

  for (const [field, control] of [
    ["headline", headline.control],
    ["subheadline", subheadline.control],
    ["body", body.control],
  ] as const) {
    control.addEventListener("input", () => {
      handlers.onDraftChange(field, control.value);
      if (field === "body") analyze.disabled = control.value.trim() === "";
    });
  }

  const feedPane = el("div", "feed-pane");
  feedPane.appendChild(el("h2", undefined, "Recent articles"));
  if (state.feedError !== null) {
    feedPane.appendChild(el("div", "feed-error", `Feed unavailable: ${state.feedError}`));
  }
  const list = el("ul", "feed-list");
  for (const item of state.feed) {
    const entry = el("li", "feed-item");
    entry.dataset.id = item.id;
    entry.appendChild(el("div", "feed-headline", item.headline));
    entry.appendChild(el("div", "feed-preview", item.preview));
    entry.addEventListener("click", () => handlers.onFeedSelect(item.id));
    list.appendChild(entry);
  }
  feedPane.appendChild(list);

  root.append(pane, feedPane);
  return root;
}

function textArea(id: string, label: string, value: string, rows: number) {
  const wrapper = el("label", "field");
  wrapper.appendChild(el("span", "field-label", label));
  const control = document.createElement("textarea");
  control.id = id;
  control.rows = rows;
  control.value = value;
  wrapper.appendChild(control);
  return { wrapper, control };
}

export interface AnalysisHandlers {
  onHeadlineEdit(value: string): void;
  onBack(): void;
}

export function renderAnalysisMode(state: UiState, handlers: AnalysisHandlers): HTMLElement {
  const response = state.lastResponse;
  if (response === null) {
    throw new Error("analysis mode requires a response");
  }
  const root = el("div", "screen analysis-mode");

  const editor = el("div", "headline-editor");
  editor.appendChild(el("span", "field-label", "Headline"));
  const input = document.createElement("input");
  input.id = "headline-edit";
  input.type = "text";
  input.value = state.draft.headline;
  input.addEventListener("input", () => handlers.onHeadlineEdit(input.value));
  editor.appendChild(input);
  if (state.busy) editor.appendChild(el("span", "busy-indicator", "analyzing…"));
  if (state.stale) {
    editor.appendChild(el("span", "stale-badge", "results may be out of date"));
  }
  root.appendChild(editor);

  const alerts = el("div", "alerts");
  const share = response.shareability;
  if (share !== null) {
    if (share.fb_alert) {
      alerts.appendChild(
        el("div", "alert-banner alert-fb", "Likely to be widely shared on Facebook"),
      );
    }
    if (share.tw_alert) {
      alerts.appendChild(
        el("div", "alert-banner alert-tw", "Likely to be widely shared on Twitter"),
      );
    }
  }
  root.appendChild(alerts);

  const weights = response.keywords.map((k) => k.weight);
  const minWeight = Math.min(...weights);
  const maxWeight = Math.max(...weights);
  const chips = el("div", "chips");
  for (const keyword of response.keywords) {
    chips.appendChild(renderChip(keyword, minWeight, maxWeight));
  }
  root.appendChild(chips);

  root.appendChild(renderScoreTable(response.keywords));

  const back = el("button", "back-button", "Edit article");
  back.id = "back";
  back.addEventListener("click", () => handlers.onBack());
  root.appendChild(back);
  return root;
}

function renderChip(keyword: KeywordEntry, minWeight: number, maxWeight: number): HTMLElement {
  const chip = el("span", `chip ${chipColor(keyword.in_headline)}`, keyword.canonical);
  chip.dataset.keyword = keyword.canonical;
  chip.style.fontSize = `${chipFontSize(keyword.weight, minWeight, maxWeight)}px`;
  return chip;
}

function renderScoreTable(keywords: KeywordEntry[]): HTMLElement {
  const table = el("table", "scores");
  const head = table.createTHead().insertRow();
  for (const column of ["Keyword", "Weight", "Frequency", "SEO Score"]) {
    head.appendChild(el("th", undefined, column));
  }
  const tbody = table.createTBody();
  for (const keyword of keywords) {
    const row = tbody.insertRow();
    row.insertCell().textContent = keyword.canonical;
    row.insertCell().textContent = keyword.weight.toFixed(3);
    row.insertCell().textContent = String(keyword.frequency);
    row.insertCell().textContent = String(keyword.seo_score);
  }
  return table;
}
