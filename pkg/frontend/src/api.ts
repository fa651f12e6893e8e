/** Thin fetch wrappers around the analysis service. */

import type { AnalyzeRequest, AnalyzeResponse, ArticleDoc, FeedItem } from "./types.js";

export interface ApiClient {
  analyze(request: AnalyzeRequest): Promise<AnalyzeResponse>;
  feed(): Promise<FeedItem[]>;
  article(id: string): Promise<ArticleDoc>;
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let message = `${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.message === "string") message = body.message;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new Error(message);
  }
  return (await response.json()) as T;
}

export function httpClient(base = ""): ApiClient {
  return {
    async analyze(request: AnalyzeRequest): Promise<AnalyzeResponse> {
      const response = await fetch(`${base}/api/analyze`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      });
      return asJson<AnalyzeResponse>(response);
    },
    async feed(): Promise<FeedItem[]> {
      return asJson<FeedItem[]>(await fetch(`${base}/api/feed`));
    },
    async article(id: string): Promise<ArticleDoc> {
      return asJson<ArticleDoc>(await fetch(`${base}/api/feed/${encodeURIComponent(id)}`));
    },
  };
}
