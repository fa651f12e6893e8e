/** Controller: state transitions, debounced re-analysis, latest-edit-wins.
 *
 * At most one analyze request is in flight; edits arriving while a request
 * runs set a pending flag, and the follow-up request is issued with the
 * latest draft once the current one settles.
 */

import type { ApiClient } from "./api.js";
import { initialState, type UiState } from "./types.js";
import { renderAnalysisMode, renderInputMode } from "./view.js";

export const DEFAULT_DEBOUNCE_MS = 500;

export class EditorApp {
  readonly state: UiState = initialState();

  private inFlight = false;
  private pending = false;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly debounceMs: number = DEFAULT_DEBOUNCE_MS,
  ) {}

  async start(): Promise<void> {
    try {
      this.state.feed = await this.api.feed();
      this.state.feedError = null;
    } catch (error) {
      this.state.feed = [];
      this.state.feedError = error instanceof Error ? error.message : String(error);
    }
    this.render();
  }

  render(): void {
    const focused = document.activeElement instanceof HTMLElement ? document.activeElement.id : "";
    this.root.replaceChildren(
      this.state.mode === "INPUT"
        ? renderInputMode(this.state, {
            onDraftChange: (field, value) => {
              this.state.draft[field] = value;
            },
            onAnalyze: () => void this.analyze(),
            onFeedSelect: (id) => void this.loadFeedArticle(id),
          })
        : renderAnalysisMode(this.state, {
            onHeadlineEdit: (value) => this.onHeadlineEdit(value),
            onBack: () => {
              this.state.mode = "INPUT";
              this.render();
            },
          }),
    );
    if (focused) {
      const again = this.root.querySelector<HTMLElement>(`#${focused}`);
      again?.focus();
    }
  }

  async loadFeedArticle(id: string): Promise<void> {
    try {
      const article = await this.api.article(id);
      this.state.draft = {
        headline: article.headline,
        subheadline: article.subheadline,
        body: article.body,
      };
      this.render();
    } catch (error) {
      this.state.feedError = error instanceof Error ? error.message : String(error);
      this.render();
    }
  }

  onHeadlineEdit(value: string): void {
    this.state.draft.headline = value;
    if (this.state.mode !== "ANALYSIS") return;
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.analyze();
    }, this.debounceMs);
  }

  /** Runs one analyze request; concurrent callers queue a single follow-up. */
  async analyze(): Promise<void> {
    if (this.state.draft.body.trim() === "") return;
    if (this.inFlight) {
      this.pending = true;
      return;
    }
    this.inFlight = true;
    this.state.busy = true;
    try {
      const response = await this.api.analyze({ ...this.state.draft });
      this.state.lastResponse = response;
      this.state.mode = "ANALYSIS";
      this.state.stale = false;
    } catch {
      // keep stale results visible, flag them
      if (this.state.lastResponse !== null) this.state.stale = true;
    } finally {
      this.inFlight = false;
      this.state.busy = false;
    }
    this.render();
    if (this.pending) {
      this.pending = false;
      await this.analyze();
    }
  }
}

export function mount(root: HTMLElement, api: ApiClient, debounceMs?: number): EditorApp {
  const app = new EditorApp(root, api, debounceMs);
  void app.start();
  return app;
}
