/** Wire types mirroring the service's JSON API. */

export interface AnalyzeRequest {
  headline: string;
  subheadline: string;
  body: string;
}

export interface KeywordEntry {
  canonical: string;
  weight: number;
  frequency: number;
  seo_score: number;
  in_headline: boolean;
}

export interface ShareabilityBlock {
  fb_score: number;
  tw_score: number;
  fb_alert: boolean;
  tw_alert: boolean;
}

export interface AnalyzeResponse {
  keywords: KeywordEntry[];
  shareability: ShareabilityBlock | null;
}

export interface FeedItem {
  id: string;
  headline: string;
  source: string | null;
  preview: string;
}

export interface ArticleDoc {
  id: string;
  headline: string;
  subheadline: string;
  body: string;
  source: string | null;
}

export type Mode = "INPUT" | "ANALYSIS";

export interface UiState {
  mode: Mode;
  draft: AnalyzeRequest;
  lastResponse: AnalyzeResponse | null;
  feed: FeedItem[];
  feedError: string | null;
  busy: boolean;
  /** Set when a re-analysis failed and the shown results are stale. */
  stale: boolean;
}

export function initialState(): UiState {
  return {
    mode: "INPUT",
    draft: { headline: "", subheadline: "", body: "" },
    lastResponse: null,
    feed: [],
    feedError: null,
    busy: false,
    stale: false,
  };
}
